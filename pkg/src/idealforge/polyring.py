"""Univariate polynomials over Z and over prime fields F_q.

Coefficients are stored ascending (constant term first) with trailing
zeros trimmed; the zero polynomial has an empty coefficient tuple.

Factorization mod q runs squarefree decomposition, distinct-degree
splitting and Cantor-Zassenhaus equal-degree splitting.  For q < 2**16 the
linear part is split by scanning all residues instead, which keeps small
cases fully deterministic.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    BadModulus,
    DivisionByZeroPoly,
    ModulusMismatch,
    NotMonic,
    NotPrime,
    ParseError,
)
from .exactarith import is_prime

ROOT_SCAN_LIMIT = 2 ** 16

_VARIABLES = ("x", "t", "θ", "ζ", "theta", "zeta")


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def format_coeffs(coeffs: Sequence[int], var: str = "x") -> str:
    """Descending-degree text, e.g. ``x^2-4*x+1``; the zero polynomial is ``0``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    return out + "".join(s + b for s, b in parts[1:])


_TERM_BODY = re.compile(r"(?P<coef>\d+)?(?P<star>\*)?(?P<var>[a-zA-Zθζ]+)?(?:\^(?P<exp>\d+))?")


def parse_coeffs(text: str) -> tuple[int, ...]:
    """Parse polynomial text into ascending integer coefficients.

    Accepts a sum of terms ``c*x^k``, ``x^k``, ``c*x``, ``x`` and ``c``, or
    a comma-separated ascending coefficient list (optionally bracketed).
    """
    s = text.strip().replace("−", "-").replace("**", "^").replace(" ", "")
    if not s:
        raise ParseError("empty polynomial text")
    if s.startswith("[") or "," in s:
        body = s.strip("[]")
        try:
            return _trim(int(tok) for tok in body.split(",") if tok != "")
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"[+-][^+-]+", s)
    if "".join(terms) != s:
        raise ParseError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    seen_var = None
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        m = _TERM_BODY.fullmatch(term[1:])
        if m is None:
            raise ParseError(f"bad term {term!r} in {text!r}")
        coef, star, var, exp = m.group("coef", "star", "var", "exp")
        if var is None:
            if coef is None or star or exp is not None:
                raise ParseError(f"bad term {term!r} in {text!r}")
            k, c = 0, int(coef)
        else:
            if var not in _VARIABLES:
                raise ParseError(f"unknown variable {var!r} in {text!r}")
            if seen_var is not None and var != seen_var:
                raise ParseError(f"mixed variables in {text!r}")
            seen_var = var
            if star and coef is None:
                raise ParseError(f"bad term {term!r} in {text!r}")
            k = int(exp) if exp is not None else 1
            c = int(coef) if coef is not None else 1
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs)
    return _trim(coeffs.get(k, 0) for k in range(top + 1))


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return cls(parse_coeffs(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __call__(self, a: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * a + c
        return v

    def derivative(self) -> "IntPoly":
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def mod(self, q: int) -> "ModPoly":
        return ModPoly(q, self.coeffs)

    def __str__(self) -> str:
        return format_coeffs(self.coeffs)


@dataclass(frozen=True)
class ModPoly:
    q: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.q < 2:
            raise BadModulus(f"modulus {self.q} < 2")
        object.__setattr__(self, "coeffs", _trim(int(c) % self.q for c in self.coeffs))

    @classmethod
    def parse(cls, text: str, q: int) -> "ModPoly":
        return cls(q, parse_coeffs(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "ModPoly":
        if self.is_zero():
            return self
        inv = pow(self.leading, -1, self.q)
        return ModPoly(self.q, (c * inv for c in self.coeffs))

    def lift(self) -> IntPoly:
        """Integer polynomial with the same residues in [0, q)."""
        return IntPoly(self.coeffs)

    def _check(self, other: "ModPoly") -> None:
        if self.q != other.q:
            raise ModulusMismatch(f"moduli {self.q} and {other.q} differ")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.q, _add(self.coeffs, other.coeffs, self.q))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.q, _sub(self.coeffs, other.coeffs, self.q))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.q, _mul(self.coeffs, other.coeffs, self.q))

    def __pow__(self, e: int) -> "ModPoly":
        out = ModPoly(self.q, (1,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, a: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = (v * a + c) % self.q
        return v

    def __str__(self) -> str:
        return format_coeffs(self.coeffs)


# -- list-level helpers over F_q -------------------------------------------------

def _add(a, b, q):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % q for i in range(n))


def _sub(a, b, q):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n))


def _mul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(v % q for v in out)


def _divmod(a, b, q):
    if not b:
        raise DivisionByZeroPoly("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, q)
    if len(r) - 1 < db:
        return (), _trim(r)
    quo = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % q
        if c:
            quo[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % q
    return _trim(quo), _trim(r[:db])


def _rem(a, b, q):
    return _divmod(a, b, q)[1]


def _monic(a, q):
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return tuple(c * inv % q for c in a)


def _gcd(a, b, q):
    while b:
        a, b = b, _rem(a, b, q)
    return _monic(a, q)


def _powmod(base, e, mod, q):
    result = (1,)
    base = _rem(base, mod, q)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, q), mod, q)
        e >>= 1
        if e:
            base = _rem(_mul(base, base, q), mod, q)
    return result


def _diff(a, q):
    return _trim(k * c % q for k, c in enumerate(a) if k)


def _pth_root(a, q):
    # valid only when every exponent with nonzero coefficient is a multiple of q
    return _trim(a[k] for k in range(0, len(a), q))


def _eval(a, x, q):
    v = 0
    for c in reversed(a):
        v = (v * x + c) % q
    return v


# -- public operations ----------------------------------------------------------

def poly_eval_mod(c: IntPoly | Sequence[int], a: int, m: int) -> int:
    """c(a) reduced into [0, m)."""
    if m < 2:
        raise BadModulus(f"modulus {m} < 2")
    coeffs = c.coeffs if isinstance(c, IntPoly) else c
    v = 0
    for k in reversed(coeffs):
        v = (v * a + k) % m
    return v


def poly_divrem_mod_q(num: ModPoly, den: ModPoly) -> tuple[ModPoly, ModPoly]:
    num._check(den)
    quo, rem = _divmod(num.coeffs, den.coeffs, num.q)
    return ModPoly(num.q, quo), ModPoly(num.q, rem)


def poly_gcd_mod_q(a: ModPoly, b: ModPoly) -> ModPoly:
    a._check(b)
    return ModPoly(a.q, _gcd(a.coeffs, b.coeffs, a.q))


@dataclass(frozen=True)
class FactorizationModQ:
    q: int
    factors: tuple[tuple[ModPoly, int], ...]

    def product(self) -> ModPoly:
        out = ModPoly(self.q, (1,))
        for phi, e in self.factors:
            out = out * phi ** e
        return out

    def total_degree(self) -> int:
        return sum(e * phi.degree for phi, e in self.factors)


def _squarefree(f, q):
    """Squarefree decomposition of monic f over F_q as [(g, multiplicity)]."""
    out = []
    c = _gcd(f, _diff(f, q), q)
    w = _divmod(f, c, q)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, q)
        fac = _divmod(w, y, q)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w, c = y, _divmod(c, y, q)[0]
        i += 1
    if len(c) > 1:
        out.extend((g, e * q) for g, e in _squarefree(_pth_root(c, q), q))
    return out


def _distinct_degree(f, q):
    out = []
    h = (0, 1)
    x = (0, 1)
    i = 1
    rest = f
    while len(rest) - 1 >= 2 * i:
        h = _powmod(h, q, rest, q)
        g = _gcd(rest, _sub(h, x, q), q)
        if len(g) > 1:
            out.append((g, i))
            rest = _divmod(rest, g, q)[0]
            h = _rem(h, rest, q)
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree(g, d, q, rng):
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = _trim(rng.randrange(q) for _ in range(n))
        if len(a) < 2:
            continue
        if q == 2:
            b, t = a, a
            for _ in range(d - 1):
                t = _powmod(t, 2, g, q)
                b = _add(b, t, q)
        else:
            b = _sub(_powmod(a, (q ** d - 1) // 2, g, q), (1,), q)
        h = _gcd(g, b, q)
        if 1 < len(h) < len(g):
            return (_equal_degree(h, d, q, rng)
                    + _equal_degree(_divmod(g, h, q)[0], d, q, rng))


def _scan_roots(g, q):
    return [a for a in range(q) if _eval(g, a, q) == 0]


def _factor_key(phi: ModPoly):
    q = phi.q
    return (phi.degree, tuple((-c) % q for c in reversed(phi.coeffs[:-1])))


def factor_mod_q(f: IntPoly, q: int, rng: Optional[random.Random] = None) -> FactorizationModQ:
    """Complete factorization of monic ``f`` into monic irreducibles mod q.

    ``rng`` drives equal-degree splitting; it defaults to a fresh
    ``random.Random(0)`` so results never depend on global state.
    """
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if rng is None:
        rng = random.Random(0)
    fq = ModPoly(q, f.coeffs).coeffs
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree(fq, q):
        for g, d in _distinct_degree(part, q):
            if d == 1 and q < ROOT_SCAN_LIMIT:
                pieces = [((-a) % q, 1) for a in _scan_roots(g, q)]
            else:
                pieces = _equal_degree(g, d, q, rng)
            for piece in pieces:
                found[tuple(piece)] = found.get(tuple(piece), 0) + mult
    factors = sorted(((ModPoly(q, k), e) for k, e in found.items()), key=lambda fe: _factor_key(fe[0]))
    return FactorizationModQ(q, tuple(factors))


def roots_mod_q(f: IntPoly, q: int) -> list[int]:
    """Roots of f in [0, q), ascending; a root of multiplicity e appears e times."""
    fact = factor_mod_q(f, q)
    roots = []
    for phi, e in fact.factors:
        if phi.degree == 1:
            roots.extend([(-phi.coeffs[0]) % q] * e)
    return sorted(roots)


def is_irreducible_mod_q(phi: ModPoly) -> bool:
    """Rabin's test: x^(q^d) = x mod phi and no smaller-degree factor."""
    q, d = phi.q, phi.degree
    if d < 1:
        return False
    if d == 1:
        return True
    g = _monic(phi.coeffs, q)
    x = (0, 1)

    def frob(k):
        return _powmod(x, q ** k, g, q)

    if _sub(frob(d), x, q):
        return False
    for r in _prime_divisors(d):
        if len(_gcd(g, _sub(frob(d // r), x, q), q)) > 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out
