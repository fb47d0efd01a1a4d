"""Checking the congruence c(a) = 0 (mod q^s) against lattice membership.

For a degree-1 prime pi = (q, theta - a) the congruence is tested as a
necessary condition for alpha in pi^s.  Membership is always decided by the
HNF lattice of pi^s, never by the congruence.  Instances where alpha is a
member but the congruence fails are returned as certificates that any third
party can re-verify from the stored integers alone.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegreeNotOne, FieldMismatch, NotARoot, SPowerTooSmall
from .exactarith import combine, hnf, member_lattice
from .idealkit import (
    IdealPowerModule,
    PrimeIdealRep,
    ideal_power_module,
    member_ideal_power,
    power_generators,
    split_prime,
)
from .numfield import FieldElement, NumberField, make_field
from .polyring import IntPoly, ModPoly, poly_divrem_mod_q, poly_eval_mod

DEFAULT_TRIALS = 1000
DEFAULT_BOUND = 10

CONSISTENT = "consistent"
COUNTEREXAMPLE = "counterexample"
CONVERSE_GAP = "converse-gap"


@dataclass(frozen=True)
class Theorem2Verdict:
    element: FieldElement
    prime: PrimeIdealRep
    s: int
    condition_holds: bool
    member: bool

    @property
    def classification(self) -> str:
        if self.member and not self.condition_holds:
            return COUNTEREXAMPLE
        if self.condition_holds and not self.member:
            return CONVERSE_GAP
        return CONSISTENT


@dataclass(frozen=True)
class CounterexampleCertificate:
    field_poly: tuple[int, ...]
    q: int
    a: int
    s: int
    element: tuple[int, ...]
    residue: int
    coefficients: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    trial: int
    quotient_step: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "field_poly": list(self.field_poly),
            "q": self.q,
            "a": self.a,
            "s": self.s,
            "element": list(self.element),
            "residue": self.residue,
            "coefficients": list(self.coefficients),
            "basis": [list(r) for r in self.basis],
            "trial": self.trial,
            "quotient_step": self.quotient_step,
        }


def necessary_condition(F: NumberField, a: int, q: int, s: int, alpha: FieldElement) -> bool:
    if s < 1:
        raise SPowerTooSmall("s must be >= 1")
    if F.f(a) % q != 0:
        raise NotARoot(f"{a} is not a root of {F.f} mod {q}")
    return poly_eval_mod(alpha.coords, a, q ** s) == 0


def verify_instance(F: NumberField, pi: PrimeIdealRep, s: int, alpha: FieldElement) -> Theorem2Verdict:
    if pi.f_deg != 1:
        raise DegreeNotOne(f"prime {pi} has residue degree {pi.f_deg}")
    cond = necessary_condition(F, pi.root, pi.q, s, alpha)
    member = member_ideal_power(ideal_power_module(pi, s), alpha)
    return Theorem2Verdict(alpha, pi, s, cond, member)


def sample_ideal_power_element(M: IdealPowerModule, gen: random.Random, bound: int) -> FieldElement:
    """Random integer combination of the basis rows, coefficients in [-bound, bound]."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    coeffs = [gen.randint(-bound, bound) for _ in range(M.basis.dim)]
    return FieldElement(M.prime.field, combine(M.basis, coeffs))


def _multiplier(pi: PrimeIdealRep) -> tuple[str, FieldElement, int]:
    """The element the multiply-and-divide step uses, and its value at a.

    In the fully split case this is the product of (theta - a_i) over the
    other roots; otherwise the cofactor f / (x - a) mod q, lifted to [0, q).
    """
    F, q, a = pi.field, pi.q, pi.root
    rep = split_prime(F, q)
    if rep.fully_split:
        P, val = F.one, 1
        for other in rep.primes:
            if other != pi:
                P = P * (F.theta - other.root)
                val *= a - other.root
        return "product_of_other_roots", P, val
    cof, rem = poly_divrem_mod_q(ModPoly(q, F.f.coeffs), pi.phi)
    assert rem.is_zero()
    P = FieldElement.from_poly(F, cof.coeffs)
    return "cofactor_lift", P, cof.lift()(a)


def quotient_step_probe(pi: PrimeIdealRep, s: int, alpha: FieldElement) -> dict:
    """Locate where evaluation at a stops commuting with division by q^(s-1).

    Multiplying alpha by the multiplier P to the power s-1 gives an element
    divisible by q^(s-1); the quotient gamma lies in pi, so gamma(a) = 0
    mod q.  Compared with that is the integer c(a) * P(a)^(s-1), which the
    congruence argument needs divisible by q^s.
    """
    q, a = pi.q, pi.root
    kind, P, P_at_a = _multiplier(pi)
    numer = alpha * P ** (s - 1)
    qs1 = q ** (s - 1)
    integral = all(c % qs1 == 0 for c in numer.coords)
    gamma = tuple(c // qs1 for c in numer.coords) if integral else None
    c_a = IntPoly(alpha.coords)(a)
    scalar = c_a * P_at_a ** (s - 1)
    return {
        "multiplier": kind,
        "multiplier_coords": list(P.coords),
        "quotient_integral": integral,
        "quotient_coords": list(gamma) if gamma is not None else None,
        "quotient_residue_mod_q": poly_eval_mod(gamma, a, q) if gamma is not None else None,
        "c_a_times_multiplier_power": scalar,
        "scalar_divisible_by_q_s": scalar % q ** s == 0,
        "f_at_a": pi.field.f(a),
        "f_at_a_divisible_by_q_s": pi.field.f(a) % q ** s == 0,
    }


def make_certificate(v: Theorem2Verdict, M: IdealPowerModule, trial: int) -> CounterexampleCertificate:
    pi = v.prime
    coeffs = member_lattice(M.basis, v.element.coords)
    assert coeffs is not None
    return CounterexampleCertificate(
        field_poly=pi.field.f.coeffs,
        q=pi.q,
        a=pi.root,
        s=v.s,
        element=v.element.coords,
        residue=poly_eval_mod(v.element.coords, pi.root, pi.q ** v.s),
        coefficients=coeffs,
        basis=M.basis.rows,
        trial=trial,
        quotient_step=quotient_step_probe(pi, v.s, v.element),
    )


def recheck_certificate(cert: CounterexampleCertificate | dict) -> bool:
    """Re-verify a certificate from its stored integers.

    The lattice of pi^s is rebuilt from its generators and compared with the
    stored basis; the stored coefficients must reproduce the element; the
    residue c(a) mod q^s must be recomputed and nonzero.
    """
    d = cert.to_dict() if isinstance(cert, CounterexampleCertificate) else cert
    F = make_field(IntPoly(d["field_poly"]))
    q, a, s = d["q"], d["a"], d["s"]
    if F.f(a) % q != 0:
        return False
    pi = PrimeIdealRep(F, q, ModPoly(q, (-a, 1)), 1)
    basis = hnf(power_generators(pi, s), det_multiple=q ** s, dim=F.degree)
    if [list(r) for r in basis.rows] != [list(r) for r in d["basis"]]:
        return False
    if list(combine(basis, d["coefficients"])) != list(d["element"]):
        return False
    residue = poly_eval_mod(d["element"], a, q ** s)
    return residue == d["residue"] and residue != 0


def _trial_element(M: IdealPowerModule, seed: int, trial: int, bound: int) -> FieldElement:
    if trial == 0:
        return M.prime.generator() ** M.s
    return sample_ideal_power_element(M, random.Random(f"{seed}:{trial}"), bound)


def _run_shard(args) -> list[tuple[int, str, Optional[CounterexampleCertificate]]]:
    pi, s, seed, bound, trials = args
    M = ideal_power_module(pi, s)
    out = []
    for t in trials:
        alpha = _trial_element(M, seed, t, bound)
        v = verify_instance(pi.field, pi, s, alpha)
        cert = make_certificate(v, M, t) if v.classification == COUNTEREXAMPLE else None
        out.append((t, v.classification, cert))
    return out


@dataclass
class SearchOutcome:
    certificates: list[CounterexampleCertificate]
    counts: dict[str, int]


def run_search(F: NumberField, pi: PrimeIdealRep, s: int, trials: int = DEFAULT_TRIALS,
               seed: int = 0, bound: int = DEFAULT_BOUND, workers: int = 1) -> SearchOutcome:
    if pi.f_deg != 1:
        raise DegreeNotOne(f"prime {pi} has residue degree {pi.f_deg}")
    if s < 2:
        raise SPowerTooSmall("s = 1 is the proven iff case; search needs s >= 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if pi.field != F:
        raise FieldMismatch("prime does not belong to the field")
    indices = list(range(trials))
    if workers > 1:
        shards = [indices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for part in pool.map(_run_shard, [(pi, s, seed, bound, sh) for sh in shards]) for r in part]
    else:
        rows = _run_shard((pi, s, seed, bound, indices))
    rows.sort(key=lambda r: r[0])
    counts = Counter(r[1] for r in rows)
    return SearchOutcome(
        certificates=[r[2] for r in rows if r[2] is not None],
        counts={k: counts.get(k, 0) for k in (CONSISTENT, COUNTEREXAMPLE, CONVERSE_GAP)},
    )


def search_counterexamples(F: NumberField, pi: PrimeIdealRep, s: int, trials: int = DEFAULT_TRIALS,
                           seed: int = 0, bound: int = DEFAULT_BOUND,
                           workers: int = 1) -> list[CounterexampleCertificate]:
    return run_search(F, pi, s, trials, seed, bound, workers).certificates
