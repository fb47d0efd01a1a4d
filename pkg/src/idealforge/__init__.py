"""Exact prime-ideal arithmetic in monogenic number rings Z[θ].

Splitting of rational primes, divisibility tests, HNF lattice oracles for
prime-ideal powers, and checks of congruence conditions against them.
"""

from .errors import IdealForgeError, InvariantViolation
from .numfield import FieldElement, NumberField, make_field, norm
from .idealkit import ideal_power_module, member_ideal_power, split_prime, valuation
from .fltcase import cyclotomic_field

__all__ = [
    "FieldElement",
    "IdealForgeError",
    "InvariantViolation",
    "NumberField",
    "cyclotomic_field",
    "ideal_power_module",
    "make_field",
    "member_ideal_power",
    "norm",
    "split_prime",
    "valuation",
]
