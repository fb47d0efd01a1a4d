"""Prime ideals of Z[theta] in two-element form (q, phi(theta)).

Splitting follows the factorization of f mod q.  Divisibility by a prime
is decided three ways: the residue test c(a) mod q (degree-1 primes), the
matrix test c(B) mod q with B the companion matrix of phi, and membership
in the HNF lattice of the ideal, which is the ground truth for every power
pi^s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldMismatch, RankDeficient, ZeroElement
from .exactarith import HnfBasis, hnf, lattice_index, member_lattice, poly_at_matrix
from .numfield import (
    FieldElement,
    NumberField,
    companion_matrix,
    norm,
    principal_generators,
)
from .polyring import FactorizationModQ, ModPoly, factor_mod_q, poly_eval_mod

DEFAULT_VALUATION_CAP = 64


@dataclass(frozen=True)
class PrimeIdealRep:
    field: NumberField
    q: int
    phi: ModPoly
    e: int

    @property
    def f_deg(self) -> int:
        return self.phi.degree

    @property
    def root(self) -> int:
        """The residue a with phi = x - a; only defined for degree-1 primes."""
        if self.f_deg != 1:
            raise ValueError(f"prime ({self.q}, {self.phi}) has residue degree {self.f_deg}")
        return (-self.phi.coeffs[0]) % self.q

    @property
    def ramified(self) -> bool:
        return self.e > 1

    def generator(self) -> FieldElement:
        """phi(theta) as an element: theta - a for degree 1, else the symmetric lift of phi."""
        if self.f_deg == 1:
            return self.field.theta - self.root
        q = self.q
        return FieldElement.from_poly(self.field, [c - q if 2 * c > q else c for c in self.phi.coeffs])

    def __str__(self) -> str:
        return f"({self.q}, {self.generator()})"


@dataclass(frozen=True)
class SplitReport:
    q: int
    primes: tuple[PrimeIdealRep, ...]
    factorization: FactorizationModQ

    @property
    def fully_split(self) -> bool:
        return all(p.f_deg == 1 and p.e == 1 for p in self.primes)

    @property
    def ramified(self) -> bool:
        return any(p.e > 1 for p in self.primes)

    @property
    def inert(self) -> bool:
        return len(self.primes) == 1 and self.primes[0].e == 1 and self.primes[0].f_deg > 1

    def degree_sum(self) -> int:
        return sum(p.e * p.f_deg for p in self.primes)

    def prime_at(self, a: int) -> PrimeIdealRep:
        for p in self.primes:
            if p.f_deg == 1 and p.root == a % self.q:
                return p
        raise ValueError(f"{a} is not a root of f mod {self.q}")


@lru_cache(maxsize=256)
def split_prime(F: NumberField, q: int) -> SplitReport:
    fact = factor_mod_q(F.f, q)
    primes = tuple(PrimeIdealRep(F, q, phi, e) for phi, e in fact.factors)
    return SplitReport(q, primes, fact)


def _check_field(pi: PrimeIdealRep, alpha: FieldElement) -> None:
    if alpha.field != pi.field:
        raise FieldMismatch("element and prime ideal live in different fields")


def residue_criterion(pi: PrimeIdealRep, alpha: FieldElement) -> bool:
    """c(a) = 0 mod q for the degree-1 prime (q, theta - a)."""
    _check_field(pi, alpha)
    return poly_eval_mod(alpha.coords, pi.root, pi.q) == 0


def matrix_criterion(pi: PrimeIdealRep, alpha: FieldElement) -> bool:
    """c(B) = 0 mod q entrywise, B the companion matrix of phi."""
    _check_field(pi, alpha)
    B = companion_matrix(pi.phi)
    return poly_at_matrix(alpha.coords, B, pi.q).is_zero()


def divides_prime(pi: PrimeIdealRep, alpha: FieldElement) -> bool:
    if pi.f_deg == 1:
        return residue_criterion(pi, alpha)
    return matrix_criterion(pi, alpha)


def matrix_power_criterion(pi: PrimeIdealRep, alpha: FieldElement, s: int) -> bool:
    """Experimental: c(B) = 0 mod q^s.  Not a proven criterion for s > 1."""
    _check_field(pi, alpha)
    return poly_at_matrix(alpha.coords, companion_matrix(pi.phi.lift()), pi.q ** s).is_zero()


@dataclass(frozen=True)
class IdealPowerModule:
    prime: PrimeIdealRep
    s: int
    basis: HnfBasis

    @property
    def index(self) -> int:
        return lattice_index(self.basis)


def power_generators(pi: PrimeIdealRep, s: int) -> list[tuple[int, ...]]:
    """Coordinates of q^(s-j) * phi(theta)^j * theta^k, 0 <= j <= s, 0 <= k < n."""
    F = pi.field
    g = pi.generator()
    theta = F.theta
    gens = []
    gpow = F.one
    for j in range(s + 1):
        elem = gpow * (pi.q ** (s - j))
        for _ in range(F.degree):
            gens.append(elem.coords)
            elem = elem * theta
        gpow = gpow * g
    return gens


@lru_cache(maxsize=1024)
def ideal_power_module(pi: PrimeIdealRep, s: int) -> IdealPowerModule:
    if s < 1:
        raise ValueError("power s must be >= 1")
    basis = hnf(power_generators(pi, s), det_multiple=pi.q ** s, dim=pi.field.degree)
    return IdealPowerModule(pi, s, basis)


def member_ideal_power(M: IdealPowerModule, alpha: FieldElement) -> bool:
    _check_field(M.prime, alpha)
    return member_lattice(M.basis, alpha.coords) is not None


def valuation(pi: PrimeIdealRep, alpha: FieldElement, cap: int = DEFAULT_VALUATION_CAP) -> int:
    """Largest s <= cap with alpha in pi^s; a result equal to cap means saturated."""
    _check_field(pi, alpha)
    if alpha.is_zero():
        raise ZeroElement("valuation of zero is infinite")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    v = 0
    while v < cap and member_ideal_power(ideal_power_module(pi, v + 1), alpha):
        v += 1
    return v


def principal_ideal_lattice(alpha: FieldElement) -> HnfBasis:
    if alpha.is_zero():
        raise ZeroElement("the zero ideal has no full-rank lattice")
    nm = norm(alpha)
    if nm == 0:
        return hnf(principal_generators(alpha))
    return hnf(principal_generators(alpha), det_multiple=nm)


def pairwise_coprime(F: NumberField, alpha: FieldElement, beta: FieldElement) -> bool:
    """True iff (alpha) + (beta) is the whole ring."""
    for x in (alpha, beta):
        if x.field != F:
            raise FieldMismatch("element does not belong to the given field")
        if x.is_zero():
            raise ZeroElement("coprimality with zero is undefined")
    gens = principal_generators(alpha) + principal_generators(beta)
    modulus = next((abs(norm(x)) for x in (alpha, beta) if norm(x) != 0), None)
    try:
        basis = hnf(gens, det_multiple=modulus)
    except RankDeficient:
        return False
    return lattice_index(basis) == 1
