"""Exact integer, residue, matrix and lattice arithmetic.

Integers are plain Python ``int`` (arbitrary precision).  Matrices are
immutable row-major tuples.  Lattices are stored in Hermite normal form:
a lower-triangular square basis whose row ``i`` carries the pivot of
column ``i``, with positive pivots and every entry left of a pivot reduced
into ``[0, pivot_of_that_column)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import gmpy2

from .errors import BadModulus, DimensionMismatch, RankDeficient

Vector = tuple[int, ...]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


def multiplicative_order(a: int, m: int) -> int:
    """Smallest k >= 1 with a**k == 1 (mod m); requires gcd(a, m) == 1."""
    a %= m
    if gmpy2.gcd(a, m) != 1:
        raise BadModulus(f"{a} is not invertible mod {m}")
    k, x = 1, a
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch("matrix dimensions must be positive")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if not data:
            raise DimensionMismatch("empty matrix")
        return cls(len(data), len(data[0]), data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(zip(*self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix.from_rows(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix.from_rows([k * a for a in r] for r in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries
        )

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix.from_rows([a % m for a in r] for r in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")


def poly_at_matrix(coeffs: Sequence[int], B: IntMatrix, modulus: Optional[int] = None) -> IntMatrix:
    """Evaluate sum(coeffs[k] * B**k) by Horner's rule, optionally mod ``modulus``."""
    if B.rows != B.cols:
        raise DimensionMismatch("polynomial evaluation needs a square matrix")
    n = B.rows
    result = IntMatrix.zero(n, n)
    eye = IntMatrix.identity(n)
    for c in reversed(list(coeffs)):
        result = (result @ B) + eye.scale(c)
        if modulus is not None:
            result = result.mod(modulus)
    return result


def det_bareiss(M: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(r) for r in M.entries]
    n = M.rows
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(M: IntMatrix, rhs: Sequence[int]) -> Optional[list[Fraction]]:
    """Solve M x = rhs exactly over Q; None when M is singular."""
    n = M.rows
    if M.cols != n or len(rhs) != n:
        raise DimensionMismatch("solve_rational needs a square system")
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(M.entries)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                t = a[i][k] / a[k][k]
                a[i] = [x - t * y for x, y in zip(a[i], a[k])]
    return [a[i][n] / a[i][i] for i in range(n)]


@dataclass(frozen=True)
class HnfBasis:
    dim: int
    basis: IntMatrix

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self.basis.entries

    @property
    def diagonal(self) -> Vector:
        return tuple(self.basis[i, i] for i in range(self.dim))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def hnf(generators: Iterable[Sequence[int]], det_multiple: Optional[int] = None,
        dim: Optional[int] = None) -> HnfBasis:
    """Hermite normal form of the lattice spanned by ``generators``.

    When ``det_multiple`` D is given the caller promises D*Z^n lies inside
    the lattice; entries are then kept reduced mod D throughout and the
    vectors D*e_k are folded in column by column.
    """
    work = [list(map(int, g)) for g in generators]
    if dim is None:
        if not work:
            raise RankDeficient("no generators")
        dim = len(work[0])
    if any(len(g) != dim for g in work):
        raise DimensionMismatch("generators have differing dimensions")
    D = None
    if det_multiple is not None:
        D = abs(int(det_multiple))
        if D == 0:
            raise BadModulus("det_multiple must be nonzero")
        work = [[v % D for v in g] for g in work]

    pivots: list[Optional[list[int]]] = [None] * dim
    for col in range(dim - 1, -1, -1):
        if D is not None:
            e = [0] * dim
            e[col] = D
            work.append(e)
        live = [g for g in work if g[col] != 0]
        rest = [g for g in work if g[col] == 0]
        if not live:
            raise RankDeficient(f"lattice has rank < {dim} (no pivot in column {col})")
        piv = live[0]
        for g in live[1:]:
            d, u, v = _xgcd(piv[col], g[col])
            a, b = piv[col] // d, g[col] // d
            piv, other = (
                [u * x + v * y for x, y in zip(piv, g)],
                [a * y - b * x for x, y in zip(piv, g)],
            )
            if D is not None:
                other = [x % D for x in other]
            if any(other):
                rest.append(other)
        if piv[col] < 0:
            piv = [-x for x in piv]
        if D is not None:
            piv = [x % D if j != col else x for j, x in enumerate(piv)]
        pivots[col] = piv
        work = [g for g in rest if any(g)]

    rows = [list(p) for p in pivots]  # type: ignore[arg-type]
    for i in range(dim):
        for j in range(i - 1, -1, -1):
            k = rows[i][j] // rows[j][j]
            if k:
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[j])]
    return HnfBasis(dim, IntMatrix.from_rows(rows))


def member_lattice(basis: HnfBasis, target: Sequence[int]) -> Optional[Vector]:
    """Coefficients k with sum(k[i] * basis.rows[i]) == target, or None."""
    if len(target) != basis.dim:
        raise DimensionMismatch(f"target has {len(target)} coordinates, lattice has dimension {basis.dim}")
    t = [int(v) for v in target]
    coeffs = [0] * basis.dim
    for i in range(basis.dim - 1, -1, -1):
        row = basis.rows[i]
        k, r = divmod(t[i], row[i])
        if r:
            return None
        coeffs[i] = k
        if k:
            for j in range(i + 1):
                t[j] -= k * row[j]
    return tuple(coeffs)


def combine(basis: HnfBasis, coeffs: Sequence[int]) -> Vector:
    """The lattice vector sum(coeffs[i] * basis.rows[i])."""
    if len(coeffs) != basis.dim:
        raise DimensionMismatch("coefficient count differs from lattice dimension")
    out = [0] * basis.dim
    for k, row in zip(coeffs, basis.rows):
        if k:
            for j, v in enumerate(row):
                out[j] += k * v
    return tuple(out)


def lattice_index(basis: HnfBasis) -> int:
    idx = 1
    for d in basis.diagonal:
        idx *= d
    return idx
