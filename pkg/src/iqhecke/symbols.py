"""j-th power residue symbols (j in {2, 3, 4, 6}), exactly.

The prime symbol is the modular exponentiation a^((N(pi)-1)/j) mod pi matched
against the j roots of unity reduced mod pi (the match is unique); composite
denominators factor and multiply.  Values are carried as exact exponents of
e(1/j), so products and power-compatibility relations are exact integer
arithmetic.  Reciprocity and the supplementary closed forms live here too;
they are used for cross-checking, never as the evaluation path.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .fields import Elem, Hnf, factor, field_data, hnf, pow_mod
from .ntheory import kronecker
from .primary import (
    E_PRIMARY,
    PRIMARY,
    EISENSTEIN_OMEGA,
    is_primary,
    t_pair,
    to_eisenstein,
)

__all__ = [
    "RootOfUnity",
    "IncompatibleOrderError",
    "order_compatible",
    "check_order",
    "symbol",
    "unit_symbol",
    "supplementary",
    "reciprocity_check",
    "general_reciprocity_check",
    "mu_elements",
]


class IncompatibleOrderError(ValueError):
    """Symbol order j is not available over the requested field."""


def order_compatible(d: int, j: int) -> bool:
    if j == 2:
        return True
    if j == 4:
        return d == -1
    if j in (3, 6):
        return d == -3
    return False


def check_order(d: int, j: int) -> None:
    if not order_compatible(d, j):
        raise IncompatibleOrderError(f"j={j} symbols are not defined over d={d}")


@dataclass(frozen=True)
class RootOfUnity:
    """Exact value e(exponent/order), or the zero value of a vanished symbol."""

    order: int
    exponent: int
    zero: bool = False

    @classmethod
    def one(cls, order: int) -> "RootOfUnity":
        return cls(order, 0)

    @classmethod
    def zero_value(cls, order: int) -> "RootOfUnity":
        return cls(order, 0, True)

    @classmethod
    def from_sign(cls, sign: int, order: int = 2) -> "RootOfUnity":
        if sign == 1:
            return cls(order, 0)
        if sign == -1:
            if order % 2:
                raise ValueError("-1 is not in an odd-order root group")
            return cls(order, order // 2)
        raise ValueError(f"sign must be +-1, got {sign}")

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    @property
    def value(self) -> complex:
        if self.zero:
            return 0j
        return _unit_circle(self.order, self.exponent)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.order != other.order:
            raise ValueError("root-of-unity orders differ")
        if self.zero or other.zero:
            return RootOfUnity.zero_value(self.order)
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        if self.zero:
            if k == 0:
                raise ValueError("0^0 symbol power")
            return self
        return RootOfUnity(self.order, self.exponent * k)

    def conj(self) -> "RootOfUnity":
        if self.zero:
            return self
        return RootOfUnity(self.order, -self.exponent)

    def to_order(self, order: int) -> "RootOfUnity":
        """Re-express in mu_order; exact, raises if the value is not there."""
        if self.zero:
            return RootOfUnity.zero_value(order)
        num = self.exponent * order
        if num % self.order:
            raise ValueError(f"{self} does not lie in mu_{order}")
        return RootOfUnity(order, num // self.order)

    def is_one(self) -> bool:
        return not self.zero and self.exponent == 0


@lru_cache(maxsize=None)
def _unit_circle(order: int, exponent: int) -> complex:
    if exponent == 0:
        return 1 + 0j
    if 2 * exponent == order:
        return -1 + 0j
    return cmath.exp(2j * cmath.pi * exponent / order)


@lru_cache(maxsize=None)
def _mu_generator(d: int, j: int) -> Elem:
    check_order(d, j)
    if j == 2:
        return Elem(-1, 0, d)
    if j == 4:
        return Elem(0, 1, -1)  # i
    if j == 3:
        return EISENSTEIN_OMEGA  # e(1/3)
    return Elem(0, 1, -3)  # w = e(1/6) for d = -3


@lru_cache(maxsize=None)
def mu_elements(d: int, j: int) -> tuple[Elem, ...]:
    g = _mu_generator(d, j)
    return tuple(g**t for t in range(j))


@lru_cache(maxsize=200_000)
def _prime_symbol_ctx(d: int, a: int, b: int, j: int):
    """(hnf, exponent, {residue index of zeta^t: t}) for the prime a+b*w."""
    pi = Elem(a, b, d)
    h = hnf(pi)
    n = pi.norm()
    if (n - 1) % j:
        raise IncompatibleOrderError(f"j={j} does not divide N(pi)-1={n - 1}")
    table = {}
    for t, z in enumerate(mu_elements(d, j)):
        idx = h.index(z)
        if idx in table:
            raise AssertionError("roots of unity collide mod pi")
        table[idx] = t
    return h, (n - 1) // j, table


@lru_cache(maxsize=50_000)
def prime_symbol_table(d: int, a: int, b: int, j: int):
    """(hnf, exponents) of (. / pi)_j over the HNF box of the prime pi = a+b*w.

    exponents[idx] is the mu_j exponent of the symbol at the residue with
    box index idx, or -1 where the symbol vanishes.  Built by powering a
    generator of the residue field, so construction is O(N(pi))
    multiplications and a single modular exponentiation.
    """
    from .fields import residue_field_generator

    pi = Elem(a, b, d)
    h, _, _ = _prime_symbol_ctx(d, a, b, j)
    n = pi.norm()
    g = residue_field_generator(d, a, b)
    t_g = _prime_symbol(g, pi, j).exponent
    table = [-1] * h.size()
    cur = h.reduce(Elem(1, 0, d))
    table[h.index(cur)] = 0
    for k in range(1, n - 1):
        cur = h.reduce(cur * g)
        table[h.index(cur)] = (k * t_g) % j
    return h, table


def _prime_symbol(x: Elem, pi: Elem, j: int) -> RootOfUnity:
    h, e, table = _prime_symbol_ctx(pi.d, pi.a, pi.b, j)
    r = h.reduce(x)
    if r.is_zero():
        return RootOfUnity.zero_value(j)
    r = pow_mod(r, e, h)
    t = table.get(h.index(r))
    if t is None:
        raise AssertionError(f"symbol value not a j-th root of unity mod {pi}")
    return RootOfUnity(j, t)


def _ramified_ok(n: Elem, j: int) -> bool:
    nn = n.norm()
    if j in (2, 4):
        return nn % 2 == 1
    if j == 3:
        return nn % 3 != 0
    return nn % 6 in (1, 5)


def symbol(a: Elem, n: Elem, j: int) -> RootOfUnity:
    """The j-th order residue symbol (a / n)_j.

    n must be coprime to the primes ramifying in the j-th cyclotomic
    extension (odd for j in {2,4}, coprime to 3 for j=3, to 6 for j=6); this
    is a precondition, not a zero value.  Returns the zero value when
    gcd(a, n) != 1, and 1 for unit n.
    """
    a._same(n)
    check_order(n.d, j)
    if n.is_zero():
        raise ValueError("symbol with zero denominator")
    if not _ramified_ok(n, j):
        raise ValueError(f"denominator {n} is not coprime to the ramified primes of j={j}")
    if n.is_unit():
        return RootOfUnity.one(j)
    _, fac = factor(n)
    out = RootOfUnity.one(j)
    for pe, e in fac:
        s = _prime_symbol(a, pe.elem, j)
        if s.zero:
            return RootOfUnity.zero_value(j)
        out = out * s**e
    return out


def unit_symbol(u: Elem, n: Elem, j: int) -> RootOfUnity:
    """Closed form (u / n)_j = u^((N(n)-1)/j) for a unit u."""
    check_order(n.d, j)
    fd = field_data(n.d)
    if not u.is_unit():
        raise ValueError(f"{u} is not a unit")
    if not _ramified_ok(n, j):
        raise ValueError("denominator not coprime to ramified primes")
    w = fd.unit_count
    nn = n.norm()
    if (nn - 1) % j:
        raise ValueError(f"j={j} does not divide N(n)-1")
    r = fd.unit_index(u)
    t = (r * ((nn - 1) // j)) % w
    num = t * j
    if num % w == 0:
        return RootOfUnity(j, num // w)
    # d=-3 cross-order case: u^((N-1)/j) is a sixth root of unity outside
    # mu_j; the symbol is its unique mu_j-congruent match modulo n.
    if n.is_unit():
        return RootOfUnity.one(j)
    h = hnf(n)
    target = h.reduce(fd.units[t])
    for tt, z in enumerate(mu_elements(n.d, j)):
        if h.reduce(z) == target:
            return RootOfUnity(j, tt)
    return symbol(u, n, j)


def supplementary(value: str, n: Elem, j: int) -> RootOfUnity:
    """Closed-form supplementary laws.

    value in {"i", "1+i"} with d=-1 (primary odd n = a+bi):
        (i/n)_4 = i^((1-a)/2),       (1+i/n)_4 = i^((a-b-1-b^2)/4)
        and their squares for j=2.
    value in {"omega", "1-omega", "2"} with d=-3 (n = a+b*w_e):
        (omega/n)_3 = w_e^((1-a-b)/3), (1-omega/n)_3 = w_e^((a-1)/3)   [primary n]
        (1-omega/n)_2 = (a/3)_Z,       (2/n)_2 = (2/N(n))_Z            [E-primary n]
        (1-omega/n)_6 = conj(w_e)^((a-1)/3) (a/3)_Z,
        (2/n)_6 = conj((n/2)_3) (2/N(n))_Z                [primary and E-primary n]
    """
    d = n.d
    if value in ("i", "1+i"):
        if d != -1 or j not in (2, 4):
            raise IncompatibleOrderError("quartic supplements require d=-1, j in {2,4}")
        if not is_primary(n) or n.norm() % 2 == 0:
            raise ValueError("supplementary laws need primary odd n")
        a, b = n.a, n.b
        if value == "i":
            if (1 - a) % 2:
                raise ValueError("(1-a)/2 not integral")
            e4 = (1 - a) // 2
        else:
            if (a - b - 1 - b * b) % 4:
                raise ValueError("(a-b-1-b^2)/4 not integral")
            e4 = (a - b - 1 - b * b) // 4
        out = RootOfUnity(4, e4)
        return out if j == 4 else (out * out).to_order(2)
    if value in ("omega", "1-omega", "2"):
        if d != -3:
            raise IncompatibleOrderError("cubic/sextic supplements require d=-3")
        nn = n.norm()
        if j == 3:
            if nn % 3 == 0:
                raise ValueError("cubic supplements need (n, 3) = 1")
        elif nn % 6 not in (1, 5):
            raise ValueError("these supplements need (n, 6) = 1")
        a, b = to_eisenstein(n)
        if value == "omega":
            if j != 3:
                raise IncompatibleOrderError("(omega/n) closed form is cubic")
            _require_primary(n, PRIMARY)
            return RootOfUnity(3, _exact_div3(1 - a - b))
        if value == "1-omega":
            if j == 3:
                _require_primary(n, PRIMARY)
                return RootOfUnity(3, _exact_div3(a - 1))
            if j == 2:
                _require_primary(n, E_PRIMARY)
                return RootOfUnity.from_sign(_nonzero_kronecker(a, 3))
            if j == 6:
                _require_primary(n, PRIMARY)
                _require_primary(n, E_PRIMARY)
                cube = RootOfUnity(3, _exact_div3(a - 1)).conj().to_order(6)
                sign = RootOfUnity.from_sign(_nonzero_kronecker(a, 3)).to_order(6)
                return cube * sign
            raise IncompatibleOrderError("(1-omega/n) supports j in {2,3,6}")
        # value == "2"
        if j == 2:
            _require_primary(n, E_PRIMARY)
            return RootOfUnity.from_sign(_nonzero_kronecker(2, n.norm()))
        if j == 6:
            _require_primary(n, PRIMARY)
            _require_primary(n, E_PRIMARY)
            cube = symbol(n, Elem(2, 0, -3), 3).conj().to_order(6)
            sign = RootOfUnity.from_sign(_nonzero_kronecker(2, n.norm())).to_order(6)
            return cube * sign
        raise IncompatibleOrderError("(2/n) supports j in {2,6}")
    raise ValueError(f"unknown supplementary value tag {value!r}")


def _require_primary(n: Elem, kind: str) -> None:
    if not is_primary(n, kind):
        raise ValueError(f"{n} is not {kind}")


def _exact_div3(x: int) -> int:
    if x % 3:
        raise ValueError(f"{x} not divisible by 3")
    return x // 3


def _nonzero_kronecker(a: int, n: int) -> int:
    v = kronecker(a, n)
    if v == 0:
        raise ValueError("vanishing Kronecker symbol in supplementary law")
    return v


def reciprocity_check(n: Elem, m: Elem, j: int) -> bool:
    """Whether the pair (n, m) satisfies the reciprocity law for order j.

    Preconditions: n, m coprime and primary (E-primary for j in {2,6} when
    d=-3), coprime to 2 (resp. 6).  This is a property-test helper; symbols
    are still evaluated through the exponentiation definition.
    """
    d = n.d
    m._same(n)
    check_order(d, j)
    nn, nm = n.norm(), m.norm()
    s_nm = symbol(n, m, j)
    s_mn = symbol(m, n, j)
    if s_nm.zero or s_mn.zero:
        raise ValueError("reciprocity requires coprime arguments")
    if d == -1:
        if j == 2:
            return (s_nm * s_mn).is_one()
        # quartic: (m/n)_4 = (n/m)_4 * (-1)^((N(n)-1)/4 * (N(m)-1)/4)
        sign = (-1) ** (((nn - 1) // 4) * ((nm - 1) // 4))
        return s_mn == s_nm * RootOfUnity.from_sign(sign, 4)
    if d == -3:
        if j == 3:
            return s_nm == s_mn
        sign = (-1) ** (((nn - 1) // 2) * ((nm - 1) // 2))
        return s_nm == s_mn * RootOfUnity.from_sign(sign, j)
    # generic d, j = 2
    sign = (-1) ** (((nn - 1) // 2) * ((nm - 1) // 2))
    return (s_nm * s_mn) == RootOfUnity.from_sign(sign, 2)


def general_reciprocity_check(n: Elem, m: Elem) -> bool:
    """Quadratic reciprocity via the (t, t') parity pairs (d not in {-1,-3}).

    Valid for any odd coprime pair; the exponent is
    t_n t'_m + t'_n t_m + t_n t_m for the fields here (all have
    d = 1, 2 mod 4).
    """
    tn, tm = t_pair(n), t_pair(m)
    big_t = tn.t * tm.t_prime + tn.t_prime * tm.t + tn.t * tm.t
    s = symbol(n, m, 2) * symbol(m, n, 2)
    return s == RootOfUnity.from_sign((-1) ** (big_t % 2), 2)
