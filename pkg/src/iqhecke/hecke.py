"""Hecke characters of trivial infinite type: residue-symbol characters, ray
class characters, conductors and primitivization.

A character is carried as an evaluator on elements (zero off the coprime
classes of its declared modulus) together with that modulus; triviality on
units makes it a function of ideals.  Primitivization decomposes the
character into local components at the primes of its conductor.  A local
component at an odd unramified prime is a power of the residue symbol there
(table-backed, shared across characters); components at higher prime powers
are materialized as explicit value tables.  The Gauss sum of the primitive
character is assembled from local Gauss sums through the standard
cross-factor identity, so no full-modulus summation is ever needed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from math import gcd as igcd
from math import lcm

from .fields import (
    Elem,
    PrimeElem,
    divides,
    divrem,
    exact_div,
    factor,
    field_data,
    hnf,
    Hnf,
    inverse_mod,
    pow_mod,
    residue_field_generator,
    residues,
)

from .gauss import gauss_direct
from .ntheory import factorint
from .primary import canonical_primary
from .symbols import RootOfUnity, check_order, prime_symbol_table, symbol, unit_symbol

__all__ = [
    "HeckeChar",
    "PrimitiveData",
    "LocalComponent",
    "principal_char",
    "char_from_symbol",
    "char_denominator",
    "extend_modulus",
    "c_k_family",
    "conductor",
    "RayClassGroup",
    "ray_class_group",
    "GroupBudgetError",
]

_ONE_TOL = 1e-9


class GroupBudgetError(RuntimeError):
    """Residue group too large for the configured enumeration budget."""


class HeckeChar:
    """A Hecke character of trivial infinite type modulo a declared element.

    evaluate(m) is defined for every element: it vanishes exactly on the
    classes not coprime to the modulus and takes values in the `order`-th
    roots of unity elsewhere.
    """

    def __init__(self, d: int, modulus: Elem, order: int, evaluate, label: str):
        self.d = d
        self.modulus = modulus
        self.order = order
        self.evaluate = evaluate
        self.label = label
        self.trivial_infinite_type = True
        self._mod_fac = None
        self._primitive: PrimitiveData | None = None

    def modulus_factorization(self) -> list[tuple[PrimeElem, int]]:
        if self._mod_fac is None:
            _, self._mod_fac = factor(self.modulus)
        return self._mod_fac

    def modulus_primes(self) -> list[Elem]:
        return [pe.elem for pe, _ in self.modulus_factorization()]

    def coprime_to_modulus(self, m: Elem) -> bool:
        return not any(divides(p, m) for p in self.modulus_primes())

    def primitive(self) -> "PrimitiveData":
        if self._primitive is None:
            self._primitive = conductor(self)
        return self._primitive

    def conj_char(self) -> "HeckeChar":
        ev = self.evaluate
        return HeckeChar(
            self.d,
            self.modulus,
            self.order,
            lambda m: ev(m).conjugate(),
            f"conj({self.label})",
        )

    def is_principal(self) -> bool:
        return self.primitive().conductor.is_unit()

    def __repr__(self):
        return f"HeckeChar({self.label}, modulus={self.modulus}, order={self.order})"


def principal_char(d: int, q: Elem) -> HeckeChar:
    chi = HeckeChar(d, q, 1, None, f"principal mod {q}")

    def ev(m: Elem) -> complex:
        return 1.0 + 0j if chi.coprime_to_modulus(m) else 0j

    chi.evaluate = ev
    return chi


# Declared-modulus multipliers for bare symbol characters: enough 2- and
# 3-part to make the evaluator genuinely periodic (the conductor search then
# trims to the true conductor; prime support is what matters downstream).
_BARE_MULTIPLIER = {2: 8, 3: 9, 4: 16, 6: 72}


def char_from_symbol(n: Elem, j: int, twist: HeckeChar | None = None) -> HeckeChar:
    """The character m -> twist(m) * (n/m)_j.

    Declared modulus: twist-modulus * n (the twist modulus always contains
    the primes ramified for order j), or a fixed j-dependent multiple of n
    without a twist.
    """
    d = n.d
    check_order(d, j)
    if n.is_zero():
        raise ValueError("symbol character needs nonzero n")
    if twist is not None:
        if twist.d != d:
            raise ValueError("twist field mismatch")
        modulus = twist.modulus * n
        order = lcm(twist.order, j)
        label = f"{twist.label}*({n}/.)_{j}"
    else:
        modulus = Elem(_BARE_MULTIPLIER[j], 0, d) * n
        order = j
        label = f"({n}/.)_{j}"
    chi = HeckeChar(d, modulus, order, None, label)
    tw = twist.evaluate if twist is not None else None
    conv = order // j

    def ev(m: Elem) -> complex:
        if not chi.coprime_to_modulus(m):
            return 0j
        s = symbol(n, m, j)
        v = RootOfUnity(order, s.exponent * conv).value
        if tw is not None:
            v *= tw(m)
        return v

    chi.evaluate = ev
    return chi


def char_denominator(n: Elem, j: int) -> HeckeChar:
    """The residue character m -> (m/n)_j of modulus n.

    Only characters trivial on the units extend to Hecke characters of
    trivial infinite type; n is rejected otherwise (the unit values are
    u^((N(n)-1)/j)).
    """
    d = n.d
    check_order(d, j)
    fd = field_data(d)
    for u in fd.units:
        if not unit_symbol(u, n, j).is_one():
            raise ValueError(f"(./{n})_{j} is nontrivial on units")
    chi = HeckeChar(d, n, j, None, f"(./{n})_{j}")

    def ev(m: Elem) -> complex:
        return symbol(m, n, j).value

    chi.evaluate = ev
    return chi


def extend_modulus(chi: HeckeChar, extra: Elem) -> HeckeChar:
    """chi viewed as an (imprimitive) character modulo chi.modulus * extra."""
    out = HeckeChar(
        chi.d,
        chi.modulus * extra,
        chi.order,
        None,
        f"{chi.label} mod *{extra}",
    )
    base = chi.evaluate

    def ev(m: Elem) -> complex:
        if not out.coprime_to_modulus(m):
            return 0j
        return base(m)

    out.evaluate = ev
    return out


def c_k_family(d: int) -> list[HeckeChar]:
    """The two quadratic twist characters whose average selects the elements
    coprime to B_K on which the quadratic symbol is trivial on units.

    d=-1: principal and m -> (i/m)_2; otherwise principal and m -> (-1/m)_2.
    The declared modulus is 4*B_K (same prime support as B_K; the factor 4
    makes the norm-based evaluators honestly periodic)."""
    fd = field_data(d)
    q = Elem(4, 0, d) * fd.b_constant
    first = principal_char(d, q)
    first.label = "principal mod B_K"
    second = HeckeChar(d, q, 4 if d == -1 else 2, None, None)

    if d == -1:

        def ev2(m: Elem, chi=second) -> complex:
            if not chi.coprime_to_modulus(m):
                return 0j
            return unit_symbol(Elem(0, 1, -1), m, 2).to_order(4).value

        second.label = "(i/.)_2"
    else:

        def ev2(m: Elem, chi=second) -> complex:
            if not chi.coprime_to_modulus(m):
                return 0j
            return -1.0 + 0j if (m.norm() - 1) // 2 % 2 else 1.0 + 0j

        second.label = "(-1/.)_2"
    second.evaluate = ev2
    second.order = 2
    return [first, second]


# ---------------------------------------------------------------------------
# Local components and conductors
# ---------------------------------------------------------------------------


@dataclass
class LocalComponent:
    """Restriction of a character to one conductor prime power."""

    prime: Elem
    exponent: int
    modulus: Elem  # prime^exponent, primary
    h: Hnf
    table: list | None = None  # explicit complex values over the box
    sym_power: int = 0  # (./prime)_sym_order ^ sym_power for exponent-1 comps
    sym_order: int = 1
    sym_table: list | None = None

    def eval(self, x: Elem) -> complex:
        if self.table is not None:
            return self.table[self.h.index(x)]
        t = self.sym_table[self.h.index(x)]
        if t < 0:
            return 0j
        return RootOfUnity(self.sym_order, t * self.sym_power).value

    def conj(self) -> "LocalComponent":
        if self.table is not None:
            return LocalComponent(
                self.prime,
                self.exponent,
                self.modulus,
                self.h,
                table=[v.conjugate() for v in self.table],
            )
        return LocalComponent(
            self.prime,
            self.exponent,
            self.modulus,
            self.h,
            sym_power=(-self.sym_power) % self.sym_order,
            sym_order=self.sym_order,
            sym_table=self.sym_table,
        )


class PrimitiveData:
    """Primitive character inducing a HeckeChar: conductor, local tables,
    Gauss sum at 1, and root number."""

    def __init__(self, d: int, components: list[LocalComponent]):
        self.d = d
        self.components = components
        fd = field_data(d)
        f = fd.one()
        for comp in components:
            f = f * comp.modulus
        self.conductor = f
        self.norm_conductor = f.norm()
        if components:
            g = 1 + 0j
            for comp in components:
                cof = exact_div(f, comp.modulus)
                g *= comp.eval(cof) * gauss_direct(fd.one(), comp.eval, comp.modulus)
            self.gauss1 = g
        else:
            self.gauss1 = 1 + 0j
        self.root_number = self.gauss1 / cmath.sqrt(self.norm_conductor)

    def evaluate(self, m: Elem) -> complex:
        v = 1 + 0j
        for comp in self.components:
            x = comp.eval(m)
            if x == 0:
                return 0j
            v *= x
        return v

    def conj(self) -> "PrimitiveData":
        return PrimitiveData(self.d, [c.conj() for c in self.components])

    def conductor_primes(self) -> list[Elem]:
        return [c.prime for c in self.components]


def _match_root(v: complex, order: int) -> int:
    """Exponent t with v = e(t/order); the value must be a root of unity."""
    ang = cmath.phase(v) / (2 * cmath.pi)
    t = round(ang * order) % order
    if abs(v - RootOfUnity(order, t).value) > 1e-6:
        raise AssertionError(f"{v} is not an order-{order} root of unity")
    return t


class _LocalLift:
    """CRT lift y -> (y mod pi^a, 1 mod q/pi^a), reduced to small norm."""

    def __init__(self, chi: HeckeChar, pi: Elem, a: int):
        self.chi = chi
        q = chi.modulus
        self.q = q
        fd = field_data(chi.d)
        pia = pi**a
        rest = exact_div(q, pia)
        if rest.is_unit():
            self.idem = fd.one()
        else:
            n = pi.norm()
            phi_pia = n**a - n ** (a - 1)
            inv = inverse_mod(rest, pia, phi_pia)
            self.idem = rest * inv
        self.one = fd.one()

    def __call__(self, y: Elem) -> Elem:
        x = self.one + (y - self.one) * self.idem
        return divrem(x, self.q)[1]

    def value(self, y: Elem) -> complex:
        v = self.chi.evaluate(self(y))
        if v == 0:
            raise AssertionError("local lift left the coprime classes")
        return v


def _local_exponent(chi: HeckeChar, pi: Elem, a: int, lift: _LocalLift) -> int:
    """Conductor exponent of the local component of chi at pi^a.

    Walks the one-unit layers top down; the subgroup 1 + pi^e is generated
    by the layer elements 1 + pi^(e') c for e <= e' < a together with the
    deeper layers, and the full unit group adds one residue-field generator.
    """
    fd = field_data(chi.d)
    one = fd.one()
    for e in range(a - 1, 0, -1):
        pie = pi**e
        for c in residues(pi):
            if c.is_zero():
                continue
            y = one + pie * c
            if abs(lift.value(y) - 1) > _ONE_TOL:
                return e + 1
    g = residue_field_generator(pi.d, pi.a, pi.b)
    if abs(lift.value(g) - 1) > _ONE_TOL:
        return 1
    return 0


def _build_component(chi: HeckeChar, pi: Elem, e: int, lift: _LocalLift) -> LocalComponent:
    d = chi.d
    n = pi.norm()
    pie = pi**e
    h = hnf(pie)
    if e == 1:
        g = residue_field_generator(d, pi.a, pi.b)
        vg = lift.value(g)
        u = _match_root(vg, chi.order)
        o = chi.order // igcd(u, chi.order)
        # power-of-symbol components need mu_o inside K; exotic local orders
        # (small ray moduli) fall through to the explicit table
        from .symbols import order_compatible

        if o > 1 and (n - 1) % o == 0 and order_compatible(d, o):
            u2 = u * o // chi.order
            h1, exp_table = prime_symbol_table(d, pi.a, pi.b, o)
            t_g = exp_table[h1.index(g)]
            power = (u2 * pow(t_g, -1, o)) % o
            comp = LocalComponent(
                pi, 1, pie, h1, sym_power=power, sym_order=o, sym_table=exp_table
            )
            # spot check the symbol-power identification
            for probe in (g * g, g * g * g):
                want = lift.value(probe)
                if abs(comp.eval(probe) - want) > 1e-8:
                    raise AssertionError("local component identification failed")
            return comp
    table = [0j] * h.size()
    for y in residues(pie):
        if divides(pi, y):
            continue
        table[h.index(y)] = lift.value(y)
    return LocalComponent(pi, e, pie, h, table=table)


def conductor(chi: HeckeChar) -> PrimitiveData:
    """Conductor and primitive inducing character.

    The conductor is assembled prime by prime (it is multiplicative over the
    local components), which realizes the minimal divisor of the modulus
    through which the character factors.
    """
    comps: list[LocalComponent] = []
    if not chi.modulus.is_unit():
        for pe, a in chi.modulus_factorization():
            pi = pe.elem
            lift = _LocalLift(chi, pi, a)
            e = _local_exponent(chi, pi, a, lift)
            if e > 0:
                comps.append(_build_component(chi, pi, e, lift))
    comps.sort(key=lambda c: c.prime.key())
    return PrimitiveData(chi.d, comps)


# ---------------------------------------------------------------------------
# Ray class groups
# ---------------------------------------------------------------------------


@dataclass
class RayClassGroup:
    """(O_K/(S))^* modulo the image of the units, with its full character
    group materialized as Hecke characters of trivial infinite type."""

    d: int
    modulus_int: int
    modulus: Elem
    h: Hnf
    generators: list[Elem]
    orders: list[int]
    dlog: dict
    unit_image_size: int
    characters: list[HeckeChar]
    char_vectors: list[tuple[int, ...]]

    @property
    def count(self) -> int:
        return len(self.characters)

    def char_power(self, index: int, j: int) -> HeckeChar:
        """The character chi^j for chi = characters[index], built exactly."""
        vec = tuple(v * j for v in self.char_vectors[index])
        return _ray_char(self, vec, f"ray(S={self.modulus_int})^{j}[{index}]")


def _element_order(x: Elem, h: Hnf, group_order: int, ofac: dict[int, int], one_r: Elem) -> int:
    o = group_order
    for p in ofac:
        while o % p == 0 and pow_mod(x, o // p, h) == one_r:
            o //= p
    return o


def _decompose(keys, mul, one_key):
    """Basis of a finite abelian group given by keys and a multiplication map.

    Returns (generator keys, orders, dlog dict key -> exponent vector).  A
    maximal-order element generates a direct summand, so the group splits as
    its span times the quotient, which is decomposed recursively.
    """
    n = len(keys)
    if n == 1:
        return [], [], {one_key: ()}
    ofac = factorint(n)
    # order of every element (orders divide the group order)
    orders = {}
    for k in keys:
        o = 1
        # order by successive division of the group order
        o = n
        for p in ofac:
            while o % p == 0:
                # test k^(o/p) == 1 by repeated multiplication table walk
                e = o // p
                cur = one_key
                b = k
                ee = e
                while ee:
                    if ee & 1:
                        cur = mul(cur, b)
                    b = mul(b, b)
                    ee >>= 1
                if cur == one_key:
                    o = e
                else:
                    break
        orders[k] = o
    lam = max(orders.values())
    g = min(k for k, o in orders.items() if o == lam)
    # cyclic span of g
    cyc = {one_key: 0}
    cur = one_key
    for t in range(1, lam):
        cur = mul(cur, g)
        cyc[cur] = t
    # quotient by <g>
    coset = {}
    reps = []
    for k in sorted(keys):
        if k in coset:
            continue
        orbit = [k]
        cur = k
        for _ in range(1, lam):
            cur = mul(cur, g)
            orbit.append(cur)
        rep = min(orbit)
        for x in orbit:
            coset[x] = rep
        reps.append(rep)
    if len(reps) == 1:
        gens, gorders = [g], [lam]
    else:
        qmul = lambda a, b: coset[mul(a, b)]
        qgens, qorders, _ = _decompose(sorted(reps), qmul, coset[one_key])
        gens, gorders = [], []
        for qg, m in zip(qgens, qorders):
            # lift: qg^m lies in <g> with exponent divisible by m
            cur = one_key
            ee = m
            b = qg
            while ee:
                if ee & 1:
                    cur = mul(cur, b)
                b = mul(b, b)
                ee >>= 1
            t = cyc[cur]
            if t % m:
                raise AssertionError("maximal-order splitting failed")
            corr = (lam - t // m) % lam
            cur = one_key
            ee = corr
            b = g
            while ee:
                if ee & 1:
                    cur = mul(cur, b)
                b = mul(b, b)
                ee >>= 1
            gens.append(mul(qg, cur))
            gorders.append(m)
        gens.append(g)
        gorders.append(lam)
    # full discrete-log table
    table = [(one_key, ())]
    for gi, oi in zip(gens, gorders):
        new = []
        for el, vec in table:
            cur = el
            for t in range(oi):
                if t:
                    cur = mul(cur, gi)
                new.append((cur, vec + (t,)))
        table = new
    dlog = dict(table)
    if len(dlog) != n:
        raise AssertionError("abelian decomposition does not span the group")
    return gens, gorders, dlog


def _ray_char(rcg: RayClassGroup, vec: tuple[int, ...], label: str) -> HeckeChar:
    lam = lcm(*rcg.orders) if rcg.orders else 1
    steps = [v % o * (lam // o) for v, o in zip(vec, rcg.orders)]
    order = 1
    for st in steps:
        if st:
            order = lcm(order, lam // igcd(st, lam))
    h = rcg.h
    dlog = rcg.dlog
    chi = HeckeChar(rcg.d, rcg.modulus, order, None, label)

    def ev(m: Elem) -> complex:
        r = h.reduce(m)
        v = dlog.get((r.a, r.b))
        if v is None:
            return 0j
        t = sum(s * x for s, x in zip(steps, v)) % lam
        return RootOfUnity(lam, t).value

    chi.evaluate = ev
    return chi


@lru_cache(maxsize=64)
def ray_class_group(d: int, S: int, budget: int = 200_000) -> RayClassGroup:
    """Ray class group for the modulus (S), with class number one identified
    as invertible residues mod S modulo the unit image.

    Characters are enumerated exactly (exponent vectors); evaluators look up
    discrete logs in the residue box.  Raises GroupBudgetError when the
    residue count N(S)^... exceeds the budget."""
    if S < 1:
        raise ValueError("S must be >= 1")
    fd = field_data(d)
    modulus = Elem(S, 0, d)
    if S * S > budget:
        raise GroupBudgetError(f"N(S) = {S * S} exceeds budget {budget}")
    h = hnf(modulus)
    _, sfac = factor(modulus)
    primes = [pe.elem for pe, _ in sfac]
    one_r = h.reduce(fd.one())
    invertible = []
    for x in residues(modulus):
        if not any(divides(p, x) for p in primes):
            invertible.append(h.reduce(x))
    if len(invertible) > budget:
        raise GroupBudgetError(f"group order {len(invertible)} exceeds budget")
    index = {(x.a, x.b): x for x in invertible}

    def mul(ka, kb):
        r = h.reduce(index[ka] * index[kb])
        return (r.a, r.b)

    keys = sorted(index)
    gens_k, orders, dlog = _decompose(keys, mul, (one_r.a, one_r.b))
    gens = [index[k] for k in gens_k]
    unit_keys = set()
    for u in fd.units:
        r = h.reduce(u)
        unit_keys.add((r.a, r.b))
    unit_vecs = [dlog[k] for k in sorted(unit_keys)]
    lam = lcm(*orders) if orders else 1
    rcg = RayClassGroup(
        d=d,
        modulus_int=S,
        modulus=modulus,
        h=h,
        generators=gens,
        orders=orders,
        dlog=dlog,
        unit_image_size=len(unit_keys),
        characters=[],
        char_vectors=[],
    )
    # characters trivial on the unit image
    ranges = [range(o) for o in orders]
    idx = 0
    for vec in iproduct(*ranges):
        steps = [v * (lam // o) for v, o in zip(vec, orders)]
        if all(sum(s * x for s, x in zip(steps, uv)) % lam == 0 for uv in unit_vecs):
            rcg.char_vectors.append(tuple(vec))
            rcg.characters.append(_ray_char(rcg, tuple(vec), f"ray(S={S})[{idx}]"))
            idx += 1
    expected = len(invertible) // rcg.unit_image_size
    if len(rcg.characters) != expected:
        raise AssertionError(
            f"ray class character count {len(rcg.characters)} != {expected}"
        )
    return rcg
