"""Exhaustive verification sweeps: reciprocity laws, supplementary laws,
Gauss-sum closed forms, functional equations, theta identities and dual
series.  These back both the CLI verify-* commands and the acceptance suite.

Symbols inside the sweeps run on per-prime exponent tables (built once per
prime, shared across pairs), so exhaustive pair sweeps cost a few
microseconds per pair; the definitional modular-exponentiation path is
exercised separately by the unit tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .fields import Elem, divides, field_data
from .gauss import (
    gauss_G,
    gauss_G_primepower,
    gauss_G_twist,
    gauss_direct,
    gauss_prime_value,
    quadratic_char_table,
)

from .hecke import HeckeChar, char_denominator, char_from_symbol, extend_modulus
from .ideals import ideal_sieve
from .lfunctions import (
    dual_series_check,
    fe_residual,
    theta_identity_check,
)
from .primary import E_PRIMARY, PRIMARY, canonical_primary, is_primary
from .symbols import order_compatible, prime_symbol_table, supplementary, symbol

__all__ = [
    "SweepResult",
    "applicable_orders",
    "reciprocity_sweep",
    "supplementary_sweep",
    "gauss_prime_sweep",
    "gauss_multiplicativity_sweep",
    "gauss_primepower_sweep",
    "gauss_twist_sweep",
    "fe_sweep",
    "theta_sweep",
    "dual_sweep",
    "primitive_test_characters",
    "unit_trivial_denominator_chars",
]


@dataclass
class SweepResult:
    checked: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, item) -> None:
        if len(self.violations) < 10:
            self.violations.append(item)

    def merge(self, other: "SweepResult") -> "SweepResult":
        out = SweepResult(self.checked + other.checked, self.violations + other.violations)
        out.violations = out.violations[:10]
        return out


def applicable_orders(d: int) -> list[int]:
    if d == -1:
        return [2, 4]
    if d == -3:
        return [2, 3, 6]
    return [2]


def _kind_for(d: int, j: int) -> str:
    return E_PRIMARY if (d == -3 and j in (2, 6)) else PRIMARY


@dataclass
class _Entry:
    elem: Elem
    norm: int
    primes: list  # [(prime Elem, exponent)]
    prime_keys: frozenset


@lru_cache(maxsize=32)
def _primary_entries(d: int, bound: int, kind: str) -> tuple:
    """Primary (or E-primary) generators up to the norm bound, with
    factorizations read off the ideal sieve."""
    sieve = ideal_sieve(d, bound)
    count = sieve.count_upto(bound)
    out = []
    for i in range(1, count):
        fac: dict[int, int] = {}
        t = i
        while sieve.spf[t] != -1:
            fac[sieve.spf[t]] = fac.get(sieve.spf[t], 0) + 1
            t = sieve.quot[t]
        if sieve.norms[t] > 1:
            fac[t] = fac.get(t, 0) + 1
        elem = sieve.elems[i]
        if kind == E_PRIMARY:
            _, elem = canonical_primary(elem, kind)
        primes = []
        for pidx, e in sorted(fac.items()):
            p = sieve.elems[pidx]
            if kind == E_PRIMARY:
                _, p = canonical_primary(p, kind)
            primes.append((p, e))
        out.append(
            _Entry(
                elem=elem,
                norm=int(sieve.norms[i]),
                primes=primes,
                prime_keys=frozenset(fac),
            )
        )
    return tuple(out)


def _sym_exp(x: Elem, entry: _Entry, j: int):
    """Exponent of (x / entry.elem)_j via prime tables; None when it vanishes."""
    acc = 0
    for p, e in entry.primes:
        h, tab = prime_symbol_table(p.d, p.a, p.b, j)
        t = tab[h.index(x)]
        if t < 0:
            return None
        acc += t * e
    return acc % j


def _norm_ok(d: int, j: int, norm: int) -> bool:
    if d == -3:
        if j == 3:
            return norm % 3 != 0
        return norm % 6 in (1, 5)
    return norm % 2 == 1


def reciprocity_sweep(d: int, j: int, max_norm: int) -> SweepResult:
    """All coprime primary (resp. E-primary) pairs with both norms <= bound
    against the order-j reciprocity law."""
    if not order_compatible(d, j):
        raise ValueError(f"j={j} not defined over d={d}")
    kind = _kind_for(d, j)
    entries = [
        e for e in _primary_entries(d, max_norm, kind) if _norm_ok(d, j, e.norm)
    ]
    res = SweepResult()
    half = j // 2
    for i1 in range(len(entries)):
        e1 = entries[i1]
        n1 = e1.norm
        for i2 in range(i1 + 1, len(entries)):
            e2 = entries[i2]
            if e1.prime_keys & e2.prime_keys:
                continue
            s12 = _sym_exp(e1.elem, e2, j)
            s21 = _sym_exp(e2.elem, e1, j)
            res.checked += 1
            if d == -1 and j == 2:
                good = (s12 + s21) % 2 == 0
            elif d == -1 and j == 4:
                t = ((n1 - 1) // 4) * ((e2.norm - 1) // 4) % 2
                good = s21 == (s12 + 2 * t) % 4
            elif d == -3 and j == 3:
                good = s12 == s21
            elif d == -3:
                t = ((n1 - 1) // 2) * ((e2.norm - 1) // 2) % 2
                good = s12 == (s21 + half * t) % j
            else:
                t = ((n1 - 1) // 2) * ((e2.norm - 1) // 2) % 2
                good = (s12 + s21) % 2 == t
            if not good:
                res.record((e1.elem, e2.elem, j))
    return res


def supplementary_sweep(d: int, max_norm: int) -> SweepResult:
    """Closed-form supplementary laws vs the exponentiation definition."""
    res = SweepResult()
    if d == -1:
        i_elem = Elem(0, 1, -1)
        opi = Elem(1, 1, -1)
        for e in _primary_entries(d, max_norm, PRIMARY):
            if e.norm % 2 == 0:
                continue
            n = e.elem
            for value, x, j in (
                ("i", i_elem, 4),
                ("1+i", opi, 4),
                ("i", i_elem, 2),
                ("1+i", opi, 2),
            ):
                res.checked += 1
                if abs(supplementary(value, n, j).value - symbol(x, n, j).value) > 1e-12:
                    res.record((value, n, j))
        return res
    if d == -3:
        from .primary import EISENSTEIN_OMEGA

        w_e = EISENSTEIN_OMEGA
        omw = Elem(1, 0, -3) - w_e
        two = Elem(2, 0, -3)
        for e in _primary_entries(d, max_norm, PRIMARY):
            if e.norm % 3 == 0:
                continue
            n = e.elem
            for value, x, j in (("omega", w_e, 3), ("1-omega", omw, 3)):
                res.checked += 1
                if abs(supplementary(value, n, j).value - symbol(x, n, j).value) > 1e-12:
                    res.record((value, n, j))
        for e in _primary_entries(d, max_norm, E_PRIMARY):
            if e.norm % 6 not in (1, 5):
                continue
            n = e.elem
            for value, x, j in (("1-omega", omw, 2), ("2", two, 2)):
                res.checked += 1
                if abs(supplementary(value, n, j).value - symbol(x, n, j).value) > 1e-12:
                    res.record((value, n, j))
            if is_primary(n, PRIMARY):
                for value, x, j in (("1-omega", omw, 6), ("2", two, 6)):
                    res.checked += 1
                    if abs(supplementary(value, n, j).value - symbol(x, n, j).value) > 1e-12:
                        res.record((value, n, j))
        return res
    raise ValueError("supplementary laws exist for d in {-1, -3}")


def _primary_primes(d: int, max_norm: int, kind: str) -> list[Elem]:
    sieve = ideal_sieve(d, max_norm)
    count = sieve.count_upto(max_norm)
    out = []
    for i in sieve.prime_indices:
        if i >= count:
            break
        p = sieve.elems[i]
        if kind == E_PRIMARY:
            _, p = canonical_primary(p, kind)
        out.append(p)
    return out


def gauss_prime_sweep(d: int, max_norm: int = 500, tol: float = 1e-10) -> SweepResult:
    """Closed-form prime Gauss sums vs the defining sum, over every primary
    prime coprime to B_K with norm <= max_norm."""
    fd = field_data(d)
    kind = E_PRIMARY if d == -3 else PRIMARY
    res = SweepResult()
    for p in _primary_primes(d, max_norm, kind):
        if divides(p, fd.b_constant):
            continue
        res.checked += 1
        closed = gauss_prime_value(p, kind)
        direct = gauss_direct(fd.one(), quadratic_char_table(p), p)
        if abs(closed - direct) > tol:
            res.record((p, closed, direct))
    return res


def gauss_multiplicativity_sweep(d: int, max_norm: int = 300, tol: float = 1e-9) -> SweepResult:
    """G_K(k, mn) = G_K(k, m) G_K(k, n) over exhaustive coprime primary odd
    pairs with both norms <= max_norm, at k in {1, a sample element}."""
    from .gauss import _g_prefactor, gauss_direct_symbol_vec_multi

    kind = E_PRIMARY if d == -3 else PRIMARY
    entries = [
        e for e in _primary_entries(d, max_norm, kind) if _norm_ok(d, 2, e.norm)
    ]
    fd = field_data(d)
    ks = [fd.one(), Elem(2, 1, d)]
    def sign_minus_one(e: _Entry) -> int:
        # (-1/x)_2 = (-1)^((N(x)-1)/2) for odd x
        return -1 if (e.norm - 1) // 2 % 2 else 1

    def pref_of(sign: int) -> complex:
        return (1 - 1j) / 2 + sign * (1 + 1j) / 2

    singles = []
    for e in entries:
        pref = pref_of(sign_minus_one(e))
        gs = gauss_direct_symbol_vec_multi(ks, e.elem, 2, fac=e.primes)
        singles.append([pref * g for g in gs])
    res = SweepResult()
    for i1 in range(len(entries)):
        e1 = entries[i1]
        for i2 in range(i1 + 1, len(entries)):
            e2 = entries[i2]
            if e1.prime_keys & e2.prime_keys:
                continue
            res.checked += 1
            prod = e1.elem * e2.elem
            pref = pref_of(sign_minus_one(e1) * sign_minus_one(e2))
            fac = list(e1.primes) + list(e2.primes)
            gs = gauss_direct_symbol_vec_multi(ks, prod, 2, fac=fac)
            for ki in range(len(ks)):
                lhs = pref * gs[ki]
                rhs = singles[i1][ki] * singles[i2][ki]
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    res.record((ks[ki], e1.elem, e2.elem, lhs, rhs))
    return res


def gauss_primepower_sweep(d: int, max_norm: int = 2000, tol: float = 1e-9) -> SweepResult:
    """Five-case prime-power closed form vs the defining sum, on every
    primary prime power of norm <= max_norm with k covering h = 0..l+1 and
    k = 0."""
    kind = E_PRIMARY if d == -3 else PRIMARY
    fd = field_data(d)
    res = SweepResult()
    for p in _primary_primes(d, max_norm, kind):
        nn = p.norm()
        if not _norm_ok(d, 2, nn):
            continue
        lmax = 1
        while nn ** (lmax + 1) <= max_norm:
            lmax += 1
        cop = Elem(1, 1, d) if not divides(p, Elem(1, 1, d)) else Elem(3, 1, d)
        for l in range(1, lmax + 1):
            ks = [Elem(0, 0, d), fd.one(), cop]
            for h in range(1, l + 2):
                ks.append(p**h)
                ks.append(p**h * cop)
            for k in ks:
                res.checked += 1
                closed = gauss_G_primepower(k, p, l)
                direct = gauss_G(k, p**l, vectorized=True)
                if abs(closed - direct) > tol * max(1.0, abs(closed)):
                    res.record((p, l, k, closed, direct))
    return res


def gauss_twist_sweep(d: int, max_norm: int = 300, tol: float = 1e-9) -> SweepResult:
    """Twist identity G(rs, chi_n) = conj((s/n)_2) G(r, chi_n) on a
    deterministic grid of coprime (s, n) with r sampling small elements."""
    kind = E_PRIMARY if d == -3 else PRIMARY
    entries = [
        e for e in _primary_entries(d, max_norm, kind) if _norm_ok(d, 2, e.norm)
    ]
    rs = [Elem(1, 0, d), Elem(0, 1, d), Elem(2, 1, d)]
    res = SweepResult()
    for e in entries[:40]:
        n = e.elem
        for e2 in entries[:12]:
            s = e2.elem
            if e.prime_keys & e2.prime_keys:
                continue
            for r in rs:
                res.checked += 1
                lhs = gauss_G_twist(r, s, n)
                rhs = gauss_G(r * s, n, vectorized=True)
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    res.record((r, s, n, lhs, rhs))
    return res


# ---------------------------------------------------------------------------
# Character sources and analytic sweeps
# ---------------------------------------------------------------------------


def primitive_test_characters(d: int, count: int) -> list[HeckeChar]:
    """Distinct-primitivization family characters: twisted quadratic symbol
    characters over increasing n, deduplicated by conductor; for d=-1 and
    d=-3 the higher orders join the pool."""
    out = []
    seen = set()
    orders = applicable_orders(d)
    kind = E_PRIMARY if d == -3 else PRIMARY
    entries = _primary_entries(d, 4000, kind)
    for e in entries:
        for j in orders:
            if not _norm_ok(d, j, e.norm):
                continue
            chi = char_from_symbol(e.elem, j)
            pd = chi.primitive()
            if pd.conductor.is_unit():
                continue
            key = (pd.conductor.a, pd.conductor.b, round(pd.gauss1.real, 6), round(pd.gauss1.imag, 6))
            if key in seen:
                continue
            seen.add(key)
            out.append(chi)
            if len(out) >= count:
                return out
    raise RuntimeError(f"only found {len(out)} primitive characters for d={d}")


def unit_trivial_denominator_chars(
    d: int, count: int, max_modulus_norm: int = 2000, orders: tuple = (2,)
) -> list[HeckeChar]:
    """Non-principal characters chi_{j,n} = (./n)_j of trivial infinite type
    with small declared modulus n."""
    out = []
    kind = E_PRIMARY if d == -3 else PRIMARY
    for e in _primary_entries(d, max_modulus_norm, kind):
        for j in orders:
            if not order_compatible(d, j) or not _norm_ok(d, j, e.norm):
                continue
            try:
                chi = char_denominator(e.elem, j)
            except ValueError:
                continue
            if chi.primitive().conductor.is_unit():
                continue
            out.append(chi)
            if len(out) >= count:
                return out
    raise RuntimeError(f"only found {len(out)} denominator characters for d={d}")


def fe_sweep(
    d: int,
    count: int = 20,
    s_values: tuple = (0.3, 0.5, 0.5 + 0.7j, 1.2),
    tol_fe: float = 1e-8,
    tol_w: float = 1e-10,
) -> SweepResult:
    """Functional-equation residuals |Lambda(s) - W Lambda-bar(1-s)| and
    ||W|-1| over `count` primitive characters."""
    res = SweepResult()
    for chi in primitive_test_characters(d, count):
        for s in s_values:
            res.checked += 1
            r, w = fe_residual(chi, s)
            if r > tol_fe or w > tol_w:
                res.record((chi.label, s, r, w))
    return res


def theta_sweep(
    d: int, count: int = 10, y_values: tuple = (0.5, 1.0, 2.0), tol: float = 1e-10
) -> SweepResult:
    """Theta-identity agreement for non-principal small-modulus characters."""
    res = SweepResult()
    orders = (2, 3) if d == -3 else ((2, 4) if d == -1 else (2,))
    pool: list[HeckeChar] = []
    try:
        pool.extend(unit_trivial_denominator_chars(d, count, orders=orders))
    except RuntimeError:
        pass
    if len(pool) < count:
        pool.extend(small_nonprincipal_characters(d, 2000))
    for chi in pool[:count]:
        for y in y_values:
            res.checked += 1
            lhs, rhs, diff = theta_identity_check(chi, y)
            if diff > tol:
                res.record((chi.label, y, lhs, rhs, diff))
    return res


def small_nonprincipal_characters(d: int, max_modulus_norm: int) -> list[HeckeChar]:
    """Non-principal trivial-infinite-type characters of small modulus:
    denominator symbol characters plus ray-class characters mod small S."""
    from .hecke import ray_class_group

    pool: list[HeckeChar] = []
    try:
        pool.extend(
            unit_trivial_denominator_chars(d, 12, max_modulus_norm)
        )
    except RuntimeError:
        pass
    for S in (2, 3, 4, 5):
        if S * S > max_modulus_norm:
            break
        rcg = ray_class_group(d, S)
        for chi in rcg.characters:
            if not chi.primitive().conductor.is_unit():
                pool.append(chi)
    return pool


def dual_sweep(
    d: int,
    count: int = 5,
    s: complex = -1.0,
    max_modulus_norm: int = 200,
    tol: float = 1e-6,
) -> SweepResult:
    """Dual-series agreement at s for imprimitive characters of small
    modulus, built by extending non-principal characters by coprime primes
    or rational integers."""
    res = SweepResult()
    pool = small_nonprincipal_characters(d, max_modulus_norm)
    fd = field_data(d)
    extenders = [Elem(2, 0, d), Elem(3, 0, d)] + [
        p for p in _primary_primes(d, 60, PRIMARY)
    ]
    made = 0
    seen = set()
    for chi in pool:
        for extra in extenders:
            if not chi.coprime_to_modulus(extra):
                continue
            q2 = chi.modulus * extra
            if q2.norm() > max_modulus_norm:
                continue
            key = (chi.label, q2.norm())
            if key in seen:
                continue
            seen.add(key)
            impr = extend_modulus(chi, extra)
            res.checked += 1
            lhs, rhs, diff = dual_series_check(impr, s, norm_budget=20000)
            if diff > tol:
                res.record((impr.label, lhs, rhs, diff))
            made += 1
            break
        if made >= count:
            break
    if made < count:
        raise RuntimeError(f"only built {made} imprimitive characters for d={d}")
    return res
