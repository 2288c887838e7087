"""Exact arithmetic in the rings of integers of the nine imaginary quadratic
fields Q(sqrt(d)) of class number one.

Elements are stored as integer coordinate pairs in the basis {1, w} with
w = (1 + sqrt(d))/2 for d = 1 (mod 4) and w = sqrt(d) otherwise.  All
arithmetic is exact (Python integers, arbitrary precision).  Residue systems
modulo a nonzero element use a fixed Hermite-normal-form box, which gives a
canonical representative for every residue class and an O(N(m)) enumeration.

Everything here is pure and reentrant; the only module state is a read-only
table of field constants and a memoized prime-above-p table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .ntheory import FactorBudgetError, kronecker, factorint

__all__ = [
    "FIELD_DS",
    "FieldMismatchError",
    "FactorBudgetError",
    "Elem",
    "PrimeElem",
    "FieldData",
    "field_data",
    "elem",
    "divides",
    "exact_div",
    "divrem",
    "valuation",
    "factor",
    "gcd",
    "phi",
    "enumerate_norm_range",
    "norm_counts",
    "Hnf",
    "hnf",
    "pow_mod",
    "inverse_mod",
    "residues",
    "coprime_residues",
]

FIELD_DS = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

# d-values whose ring of integers is norm-Euclidean; the Euclidean gcd loop is
# valid only for these.
EUCLIDEAN_DS = (-1, -2, -3, -7, -11)


class FieldMismatchError(ValueError):
    """Binary operation on elements of different fields."""


def _check_d(d: int) -> int:
    if d not in FIELD_DS:
        raise ValueError(f"d must be one of {FIELD_DS}, got {d}")
    return d


class Elem:
    """Element a + b*w of the ring of integers of Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int, b: int, d: int):
        self.a = a
        self.b = b
        self.d = d

    # -- ring structure ----------------------------------------------------

    def _same(self, other: "Elem") -> None:
        if self.d != other.d:
            raise FieldMismatchError(f"fields d={self.d} and d={other.d} differ")

    def __add__(self, other: "Elem") -> "Elem":
        self._same(other)
        return Elem(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "Elem") -> "Elem":
        self._same(other)
        return Elem(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "Elem":
        return Elem(-self.a, -self.b, self.d)

    def __mul__(self, other: "Elem") -> "Elem":
        self._same(other)
        a, b, c, e, d = self.a, self.b, other.a, other.b, self.d
        if d % 4 == 1:
            # w^2 = w + (d-1)/4
            k = (d - 1) // 4
            return Elem(a * c + b * e * k, a * e + b * c + b * e, d)
        return Elem(a * c + b * e * d, a * e + b * c, d)

    def __pow__(self, n: int) -> "Elem":
        if n < 0:
            raise ValueError("negative powers are not ring elements in general")
        result = Elem(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "Elem":
        if self.d % 4 == 1:
            return Elem(self.a + self.b, -self.b, self.d)
        return Elem(self.a, -self.b, self.d)

    def norm(self) -> int:
        a, b, d = self.a, self.b, self.d
        if d % 4 == 1:
            return a * a + a * b + b * b * ((1 - d) // 4)
        return a * a - d * b * b

    def trace(self) -> int:
        if self.d % 4 == 1:
            return 2 * self.a + self.b
        return 2 * self.a

    # -- conveniences -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def key(self) -> tuple[int, int, int]:
        """Deterministic sort key (norm, a, b)."""
        return (self.norm(), self.a, self.b)

    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def complex_value(self) -> complex:
        d = self.d
        if d % 4 == 1:
            return self.a + self.b * complex(0.5, 0.5 * math.sqrt(-d))
        return complex(self.a, self.b * math.sqrt(-d))

    @property
    def field(self) -> "FieldData":
        return field_data(self.d)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Elem)
            and self.a == other.a
            and self.b == other.b
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"Elem({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        w = "w" if self.d % 4 == 1 else f"sqrt({self.d})"
        return f"{self.a}{self.b:+}*{w}"


def elem(a: int, b: int, d: int) -> Elem:
    """Construct an element, validating the field tag."""
    return Elem(a, b, _check_d(d))


@dataclass(frozen=True)
class PrimeElem:
    """A prime element together with its rational prime and splitting type."""

    elem: Elem
    rational_prime: int
    split_type: str  # "ramified" | "split" | "inert"


@dataclass(frozen=True)
class FieldData:
    """Derived constants of one of the nine class-number-one fields."""

    d: int
    discriminant: int
    omega_rule: str  # "half" for d=1 (mod 4), "root" otherwise
    units: tuple[Elem, ...]
    unit_count: int
    b_constant: Elem  # the auxiliary modulus B_K (a rational integer here)
    eta: Elem  # unit constant entering the odd prime-power Gauss sum case
    residue_at_one: float  # residue of the Dedekind zeta function at s=1
    euclidean: bool
    omega: Elem  # the generator w of the integral basis {1, w}

    def one(self) -> Elem:
        return Elem(1, 0, self.d)

    def zero(self) -> Elem:
        return Elem(0, 0, self.d)

    def make(self, a: int, b: int = 0) -> Elem:
        return Elem(a, b, self.d)

    def unit_index(self, u: Elem) -> int:
        """Index of a unit in the canonical power ordering of the generator."""
        for i, v in enumerate(self.units):
            if v == u:
                return i
        raise ValueError(f"{u} is not a unit of d={self.d}")


@lru_cache(maxsize=None)
def field_data(d: int) -> FieldData:
    _check_d(d)
    disc = d if d % 4 == 1 else 4 * d
    if d == -1:
        gen = Elem(0, 1, d)  # i
        units = tuple(gen**k for k in range(4))
    elif d == -3:
        gen = Elem(0, 1, d)  # w = (1+sqrt(-3))/2, a primitive sixth root of unity
        units = tuple(gen**k for k in range(6))
    else:
        units = (Elem(1, 0, d), Elem(-1, 0, d))
    if d % 2 == 0:
        b_const = 2 * disc
    else:
        b_const = (1 - d) * disc // 2
    if d == -1:
        eta = Elem(0, 1, d)
    elif d == -7:
        eta = Elem(1, 0, d)
    else:
        eta = Elem(-1, 0, d)
    # Class-number-one residue of zeta_K at 1: 2*pi / (#units * sqrt(|disc|)).
    r_k = 2.0 * math.pi / (len(units) * math.sqrt(-disc))
    return FieldData(
        d=d,
        discriminant=disc,
        omega_rule="half" if d % 4 == 1 else "root",
        units=units,
        unit_count=len(units),
        b_constant=Elem(b_const, 0, d),
        eta=eta,
        residue_at_one=r_k,
        euclidean=d in EUCLIDEAN_DS,
        omega=Elem(0, 1, d),
    )


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------


def _round_half_down(p: int, q: int) -> int:
    """Nearest integer to p/q (q > 0); exact halves round toward -infinity."""
    return (2 * p + q - 1) // (2 * q)


def divides(x: Elem, y: Elem) -> bool:
    """True iff x divides y exactly (x nonzero)."""
    x._same(y)
    if x.is_zero():
        raise ZeroDivisionError("division by zero element")
    n = x.norm()
    t = y * x.conj()
    return t.a % n == 0 and t.b % n == 0


def exact_div(y: Elem, x: Elem) -> Elem:
    """y / x, raising if the division is not exact."""
    x._same(y)
    if x.is_zero():
        raise ZeroDivisionError("division by zero element")
    n = x.norm()
    t = y * x.conj()
    if t.a % n or t.b % n:
        raise ValueError(f"{x} does not divide {y}")
    return Elem(t.a // n, t.b // n, x.d)


def divrem(x: Elem, y: Elem) -> tuple[Elem, Elem]:
    """Nearest-lattice-point quotient and remainder.

    The quotient coordinates are the rational coordinates of x/y rounded to
    the nearest integer, exact halves rounding toward -infinity on both
    coordinates.  In the five norm-Euclidean fields the corner of the cell
    can tie or exceed the divisor norm (the norm form reaches 1.25 on the
    half-cell for d=-11), so when rounding fails to reduce there, the
    quotient is moved to the best of the neighbouring lattice points --
    deterministically, and a strictly norm-reducing choice always exists.
    Remainders in the four non-Euclidean fields may exceed the divisor norm.
    """
    if y.is_zero():
        raise ZeroDivisionError("division by zero element")
    x._same(y)
    n = y.norm()
    t = x * y.conj()
    q = Elem(_round_half_down(t.a, n), _round_half_down(t.b, n), x.d)
    r = x - q * y
    if r.norm() >= n and field_data(x.d).euclidean:
        best = (r.norm(), q, r)
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                q2 = Elem(q.a + da, q.b + db, x.d)
                r2 = x - q2 * y
                cand = (r2.norm(), q2, r2)
                if cand[0] < best[0] or (cand[0] == best[0] and q2.key() < best[1].key()):
                    best = cand
        _, q, r = best
        assert r.norm() < n, "norm reduction failed in a Euclidean field"
    return q, r


def valuation(x: Elem, p: Elem) -> tuple[int, Elem]:
    """Largest e with p^e | x, together with the cofactor x / p^e."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    e = 0
    while divides(p, x):
        x = exact_div(x, p)
        e += 1
    return e, x


# ---------------------------------------------------------------------------
# Residue systems (HNF box)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hnf:
    """Hermite-normal-form data of the lattice m*O_K.

    The lattice has basis (A, 0), (B, D) in {1, w} coordinates with
    0 <= B < A and A*D = N(m); canonical representatives live in the box
    [0, A) x [0, D).
    """

    A: int
    B: int
    D: int
    d: int

    def reduce(self, x: Elem) -> Elem:
        j = x.b % self.D
        t = (x.b - j) // self.D
        a = (x.a - t * self.B) % self.A
        return Elem(a, j, self.d)

    def index(self, x: Elem) -> int:
        r = self.reduce(x)
        return r.a * self.D + r.b

    def size(self) -> int:
        return self.A * self.D


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    g, x0, x1 = a, 1, 0
    h, y0, y1 = b, 0, 1
    while h:
        q = g // h
        g, h = h, g - q * h
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if g < 0:
        g, x0, y0 = -g, -x0, -y0
    return g, x0, y0


def hnf(m: Elem) -> Hnf:
    """HNF of the lattice m*O_K (m nonzero)."""
    if m.is_zero():
        raise ZeroDivisionError("zero modulus")
    v1 = m
    v2 = m * Elem(0, 1, m.d)
    g, al, be = _xgcd(v1.b, v2.b)
    D = g
    A0 = (v1.b // g) * v2.a - (v2.b // g) * v1.a
    A = abs(A0)
    B = (al * v1.a + be * v2.a) % A
    assert A * D == abs(m.norm())
    return Hnf(A=A, B=B, D=D, d=m.d)


def residues(m: Elem) -> Iterator[Elem]:
    """A full residue system modulo m (the HNF box), in lexicographic order."""
    h = hnf(m)
    d = m.d
    for a in range(h.A):
        for b in range(h.D):
            yield Elem(a, b, d)


def pow_mod(x: Elem, e: int, h: Hnf) -> Elem:
    """x^e reduced modulo the lattice described by h (e >= 0)."""
    result = h.reduce(Elem(1, 0, h.d))
    base = h.reduce(x)
    while e:
        if e & 1:
            result = h.reduce(result * base)
        base = h.reduce(base * base)
        e >>= 1
    return result


def inverse_mod(x: Elem, m: Elem, phi_m: int) -> Elem:
    """Inverse of x modulo m given phi(m) = #(O_K/m)^*, via Euler's theorem."""
    h = hnf(m)
    inv = pow_mod(x, phi_m - 1, h)
    check = h.reduce(x * inv)
    if not check.is_one():
        raise ValueError(f"{x} is not invertible modulo {m}")
    return inv


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def prime_above(d: int, p: int) -> tuple[str, Elem]:
    """Splitting type of the rational prime p and one prime element above it.

    For split/ramified p the element has norm p (found by a deterministic
    lattice scan); for inert p it is p itself.
    """
    fd = field_data(d)
    chi = kronecker(fd.discriminant, p)
    if chi == -1:
        return "inert", Elem(p, 0, d)
    kind = "ramified" if chi == 0 else "split"
    if d % 4 == 1:
        # a^2 + a b + b^2 (1-d)/4 = p  =>  (2a+b)^2 + |d| b^2 = 4p
        for b in range(0, math.isqrt(4 * p // (-d)) + 1):
            t2 = 4 * p + d * b * b
            if t2 < 0:
                break
            t = math.isqrt(t2)
            if t * t == t2 and (t - b) % 2 == 0:
                return kind, Elem((t - b) // 2, b, d)
            if t * t == t2 and (-t - b) % 2 == 0:
                return kind, Elem((-t - b) // 2, b, d)
    else:
        for b in range(0, math.isqrt(p // (-d)) + 1):
            t2 = p + d * b * b
            if t2 < 0:
                break
            t = math.isqrt(t2)
            if t * t == t2:
                return kind, Elem(t, b, d)
    raise AssertionError(f"no element of norm {p} found for d={d}")


def factor(
    x: Elem,
    budget: int | None = None,
    kind: str = "primary",
) -> tuple[Elem, list[tuple[PrimeElem, int]]]:
    """Factor a nonzero element into unit * product of canonical primes.

    Returns (unit, [(PrimeElem, exponent), ...]) with primes in canonical
    primary form (E-primary for d=-3 when kind="e_primary") and deterministic
    (norm, a, b) ordering.  Raises FactorBudgetError when N(x) exceeds the
    factoring budget.
    """
    from .primary import canonical_primary  # cycle: primary needs arithmetic only

    if x.is_zero():
        raise ValueError("cannot factor zero")
    d = x.d
    n = x.norm()
    if budget is None:
        rat = factorint(n)
    else:
        rat = factorint(n, budget)
    out: list[tuple[PrimeElem, int]] = []
    rest = x
    for p in sorted(rat):
        ep = rat[p]
        split_type, pi0 = prime_above(d, p)
        if split_type == "inert":
            assert ep % 2 == 0
            _, pi = canonical_primary(pi0, kind)
            e = ep // 2
            for _ in range(e):
                rest = exact_div(rest, pi)
            out.append((PrimeElem(pi, p, split_type), e))
        elif split_type == "ramified":
            _, pi = canonical_primary(pi0, kind)
            for _ in range(ep):
                rest = exact_div(rest, pi)
            out.append((PrimeElem(pi, p, split_type), ep))
        else:
            _, pi = canonical_primary(pi0, kind)
            _, pib = canonical_primary(pi0.conj(), kind)
            e1 = 0
            while divides(pi, rest):
                rest = exact_div(rest, pi)
                e1 += 1
            e2 = ep - e1
            for _ in range(e2):
                rest = exact_div(rest, pib)
            if e1:
                out.append((PrimeElem(pi, p, split_type), e1))
            if e2:
                out.append((PrimeElem(pib, p, split_type), e2))
    assert rest.is_unit(), f"factor leftover {rest} is not a unit"
    out.sort(key=lambda t: t[0].elem.key())
    return rest, out


def gcd(x: Elem, y: Elem, kind: str = "primary") -> Elem:
    """Generator of the ideal (x, y), returned as the canonical primary
    associate.

    Uses the Euclidean loop in the five norm-Euclidean fields and the
    factorization route elsewhere (nearest-point division does not terminate
    in general for d <= -19).
    """
    from .primary import canonical_primary

    x._same(y)
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if x.is_zero():
        return canonical_primary(y, kind)[1]
    if y.is_zero():
        return canonical_primary(x, kind)[1]
    fd = field_data(x.d)
    if fd.euclidean:
        while not y.is_zero():
            _, r = divrem(x, y)
            x, y = y, r
        return canonical_primary(x, kind)[1]
    _, fx = factor(x, kind=kind)
    _, fy = factor(y, kind=kind)
    ey = {pe.elem: e for pe, e in fy}
    g = fd.one()
    for pe, e in fx:
        common = min(e, ey.get(pe.elem, 0))
        if common:
            g = g * pe.elem ** common
    return canonical_primary(g, kind)[1]


def coprime(x: Elem, primes: list[Elem]) -> bool:
    """True iff x is divisible by none of the given primes."""
    return not any(divides(p, x) for p in primes)


def phi(x: Elem) -> int:
    """#(O_K/(x))^*, the ring analogue of the Euler totient."""
    if x.is_unit():
        return 1
    _, fac = factor(x)
    out = 1
    for pe, e in fac:
        n = pe.elem.norm()
        out *= n**e - n ** (e - 1)
    return out


def phi_from_factorization(fac: list[tuple[PrimeElem, int]]) -> int:
    out = 1
    for pe, e in fac:
        n = pe.elem.norm()
        out *= n**e - n ** (e - 1)
    return out


# ---------------------------------------------------------------------------
# Norm-bounded enumeration
# ---------------------------------------------------------------------------


def enumerate_norm_range(d: int, lo: int, hi: int) -> list[Elem]:
    """All nonzero elements with lo <= N <= hi, sorted by (norm, a, b)."""
    _check_d(d)
    if not 0 <= lo <= hi:
        raise ValueError("need 0 <= lo <= hi")
    out: list[Elem] = []
    if d % 4 == 1:
        bmax = math.isqrt(4 * hi // (-d))
        for b in range(-bmax, bmax + 1):
            disc = 4 * hi + d * b * b
            if disc < 0:
                continue
            s = math.isqrt(disc)
            amin = (-b - s + 1) // 2 if (s + b) % 2 else (-b - s) // 2
            amax = (s - b) // 2
            for a in range(amin, amax + 1):
                n = a * a + a * b + b * b * ((1 - d) // 4)
                if lo <= n <= hi and n > 0:
                    out.append(Elem(a, b, d))
    else:
        bmax = math.isqrt(hi // (-d))
        for b in range(-bmax, bmax + 1):
            s = math.isqrt(hi + d * b * b)
            for a in range(-s, s + 1):
                n = a * a - d * b * b
                if lo <= n <= hi and n > 0:
                    out.append(Elem(a, b, d))
    out.sort(key=lambda e: e.key())
    return out


def norm_counts(d: int, limit: int):
    """numpy array c with c[n] = #{x in O_K : N(x) = n} for 0 <= n <= limit."""
    import numpy as np

    _check_d(d)
    if d % 4 == 1:
        bmax = math.isqrt(4 * limit // (-d))
        bs = np.arange(-bmax, bmax + 1, dtype=np.int64)
        counts = np.zeros(limit + 1, dtype=np.int64)
        c = (1 - d) // 4
        for b in bs:
            disc = 4 * limit + d * b * b
            if disc < 0:
                continue
            s = math.isqrt(int(disc))
            amin = (-int(b) - s + 1) // 2 if (s + int(b)) % 2 else (-int(b) - s) // 2
            amax = (s - int(b)) // 2
            a = np.arange(amin, amax + 1, dtype=np.int64)
            n = a * a + a * int(b) + int(b) * int(b) * c
            n = n[(n >= 0) & (n <= limit)]
            counts += np.bincount(n, minlength=limit + 1)
    else:
        bmax = math.isqrt(limit // (-d))
        counts = np.zeros(limit + 1, dtype=np.int64)
        for b in range(-bmax, bmax + 1):
            s = math.isqrt(limit + d * b * b)
            a = np.arange(-s, s + 1, dtype=np.int64)
            n = a * a - d * b * b
            counts += np.bincount(n, minlength=limit + 1)
    return counts


def coprime_residues(m: Elem, fac: list[tuple[PrimeElem, int]] | None = None) -> list[Elem]:
    """Canonical representatives of (O_K/m)^*, in HNF-box order."""
    if fac is None:
        _, fac = factor(m)
    primes = [pe.elem for pe, _ in fac]
    return [x for x in residues(m) if coprime(x, primes)]


@lru_cache(maxsize=100_000)
def residue_field_generator(d: int, a: int, b: int) -> Elem:
    """A generator of (O_K/pi)^* for the prime element pi = a + b*w.

    Deterministic: the first HNF-box representative whose order is N(pi)-1.
    """
    pi = Elem(a, b, d)
    h = hnf(pi)
    n = pi.norm()
    qs = sorted(factorint(n - 1))
    one = Elem(1, 0, d)
    for cand in residues(pi):
        if cand.is_zero():
            continue
        if pow_mod(cand, n - 1, h) != h.reduce(one):
            continue  # not invertible (shares a factor with pi)
        if all(pow_mod(cand, (n - 1) // q, h) != h.reduce(one) for q in qs):
            return cand
    raise AssertionError(f"no generator found modulo {pi}")
