"""Arithmetic in the monogenic ring Z[theta] = Z[x]/(f).

Elements are integer coordinate vectors in the power basis
``1, theta, ..., theta^(n-1)``.  Z[theta] is taken to be the whole ring of
integers; maximal orders are never computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .errors import DegreeTooSmall, FieldMismatch, NotMonic
from .exactarith import IntMatrix, det_bareiss, is_prime
from .polyring import IntPoly, ModPoly, factor_mod_q, format_coeffs, parse_coeffs

CERTIFY_PRIMES = 25


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) * Res(f, f') for monic f, via the Sylvester matrix."""
    n = f.degree
    df = f.derivative()
    m = df.degree
    if m < 0:
        return 0
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    dc = list(reversed(df.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + dc + [0] * (size - m - 1 - i))
    res = det_bareiss(IntMatrix.from_rows(rows))
    return (-1) ** (n * (n - 1) // 2) * res


def degeneracy(f: IntPoly) -> Optional[str]:
    """Reason ``f`` cannot define a field, or None when no obstruction is visible."""
    if discriminant(f) == 0:
        return "zero discriminant (repeated factor)"
    c0 = f.coeffs[0]
    if c0 == 0:
        return "integer root 0"
    for d in range(1, abs(c0) + 1) if abs(c0) <= 10 ** 6 else ():
        if c0 % d == 0:
            for r in (d, -d):
                if f(r) == 0:
                    return f"integer root {r}"
    return None


@dataclass(frozen=True)
class NumberField:
    f: IntPoly
    irreducibility_status: str
    witness_prime: Optional[int] = None

    @property
    def degree(self) -> int:
        return self.f.degree

    @cached_property
    def discriminant(self) -> int:
        return discriminant(self.f)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.f == other.f

    def __hash__(self) -> int:
        return hash(self.f)

    def element(self, coords: Iterable[int]) -> "FieldElement":
        c = [int(v) for v in coords]
        if len(c) > self.degree:
            return FieldElement.from_poly(self, c)
        return FieldElement(self, tuple(c + [0] * (self.degree - len(c))))

    def from_int(self, m: int) -> "FieldElement":
        return self.element([m])

    def parse_element(self, text: str) -> "FieldElement":
        """Coordinate list ``[c0, c1, ...]`` or polynomial text in theta."""
        return FieldElement.from_poly(self, parse_coeffs(text))

    @property
    def theta(self) -> "FieldElement":
        return self.element([0, 1])

    @property
    def one(self) -> "FieldElement":
        return self.from_int(1)

    @property
    def zero(self) -> "FieldElement":
        return self.from_int(0)


def make_field(f: IntPoly | str) -> NumberField:
    if isinstance(f, str):
        f = IntPoly.parse(f)
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if f.degree < 2:
        raise DegreeTooSmall(f"degree {f.degree} < 2")
    disc = discriminant(f)
    if disc != 0:
        tried, q = 0, 1
        while tried < CERTIFY_PRIMES:
            q += 1
            if not is_prime(q) or disc % q == 0:
                continue
            tried += 1
            fact = factor_mod_q(f, q)
            if len(fact.factors) == 1 and fact.factors[0][1] == 1:
                return NumberField(f, "certified", q)
    return NumberField(f, "assumed", None)


def _reduce(field: NumberField, coeffs: Sequence[int]) -> tuple[int, ...]:
    """Rewrite theta^k for k >= n using f(theta) = 0."""
    n = field.degree
    fc = field.f.coeffs
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        t = c[k]
        if t:
            for j in range(n):
                c[k - n + j] -= t * fc[j]
            c[k] = 0
    c = c[:n]
    return tuple(c + [0] * (n - len(c)))


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise FieldMismatch(f"expected {self.field.degree} coordinates, got {len(self.coords)}")

    @classmethod
    def from_poly(cls, field: NumberField, coeffs: Sequence[int]) -> "FieldElement":
        return cls(field, _reduce(field, coeffs))

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field != self.field:
            raise FieldMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.field.degree
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        return FieldElement.from_poly(self.field, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_poly(self) -> IntPoly:
        return IntPoly(self.coords)

    def rational_value(self) -> Optional[int]:
        """The integer m when the element equals m * 1, else None."""
        return self.coords[0] if not any(self.coords[1:]) else None

    def __str__(self) -> str:
        return format_coeffs(self.coords, "θ")


def elem_arith(op: str, alpha: FieldElement, beta: FieldElement) -> FieldElement:
    if alpha.field != beta.field:
        raise FieldMismatch("elements belong to different fields")
    if op == "add":
        return alpha + beta
    if op == "sub":
        return alpha - beta
    if op == "mul":
        return alpha * beta
    raise ValueError(f"unknown operation {op!r}")


def companion_matrix(phi: IntPoly | ModPoly) -> IntMatrix:
    """Companion matrix B with phi(B) = 0.

    Ones on the subdiagonal; the last column holds the negated
    coefficients of phi, constant term first.  For a ModPoly the entries
    are residues in [0, q).
    """
    if not phi.is_monic():
        raise NotMonic(f"{phi} is not monic")
    r = phi.degree
    if r < 1:
        raise DegreeTooSmall("companion matrix needs degree >= 1")
    rows = [[0] * r for _ in range(r)]
    for i in range(1, r):
        rows[i][i - 1] = 1
    for i in range(r):
        v = -phi.coeffs[i]
        rows[i][r - 1] = v % phi.q if isinstance(phi, ModPoly) else v
    return IntMatrix.from_rows(rows)


def multiplication_matrix(alpha: FieldElement) -> IntMatrix:
    """Matrix whose column k is the coordinate vector of alpha * theta^k."""
    cols = []
    cur = alpha
    theta = alpha.field.theta
    for _ in range(alpha.field.degree):
        cols.append(cur.coords)
        cur = cur * theta
    return IntMatrix.from_rows(zip(*cols))


def principal_generators(alpha: FieldElement) -> list[tuple[int, ...]]:
    """Z-module generators alpha * theta^k of the principal ideal (alpha)."""
    return [tuple(col) for col in multiplication_matrix(alpha).transpose().entries]


def norm(alpha: FieldElement) -> int:
    return det_bareiss(multiplication_matrix(alpha))


def is_unit(alpha: FieldElement) -> bool:
    return abs(norm(alpha)) == 1
