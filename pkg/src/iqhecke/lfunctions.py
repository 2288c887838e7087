"""Hecke L-functions of trivial infinite type, numerically.

The primitive L-value comes from splitting the Mellin integral of the theta
sum at y0 = (|D_K| N(f))^(-1/2) and applying the theta identity below the
split point, which turns both halves into incomplete-gamma-weighted sums
over ideals:

    |U_K| (2pi)^(-s) Gamma(s) L(s, psi)
        = sum_m psi(m) (2pi N(m))^(-s) Gamma(s, 2pi N(m) y0)
        + g(1, psi)/sqrt(|D_K| N(f)) * sum_k conj(psi)(k)
              (2pi N(k)/(|D_K| N(f)))^(s-1) Gamma(1-s, 2pi N(k) y0),

both sums truncated once the incomplete-gamma tails drop below the target.
With this split both sums share the same argument array, and the completed
function Lambda is obtained without ever dividing by Gamma(s), so trivial
zeros and Gamma poles are handled exactly.  Imprimitive characters pick up
their Euler factors at the declared-modulus primes away from the conductor.
"""

from __future__ import annotations

import cmath
import math
from math import fsum

import numpy as np
from scipy.special import rgamma as _rgamma
from scipy.special import gamma as _cgamma

from .fields import Elem, divides, exact_div, field_data, hnf
from .gauss import gauss_direct
from .hecke import HeckeChar, PrimitiveData
from .ideals import ideal_sieve
from .incgamma import upper_gamma
from .zeta import zeta_K

__all__ = [
    "l_value",
    "lambda_completed",
    "lambda_from_primitive",
    "fe_residual",
    "theta_identity_check",
    "dual_series_check",
    "dirichlet_series_direct",
    "PrecisionError",
]


class PrecisionError(RuntimeError):
    """Requested precision is not reachable within the truncation budget."""


def _csum(values) -> complex:
    """Deterministic compensated complex sum (fixed order)."""
    arr = np.asarray(values, dtype=np.complex128)
    return complex(fsum(arr.real.tolist()), fsum(arr.imag.tolist()))


def _cutoff(s: complex, eps: float) -> float:
    """x beyond which |Gamma(s', x)| style tails fall under eps (s' = s, 1-s)."""
    c = max(abs(s), abs(1 - s)) + 1.5
    target = -math.log(eps)
    x = target + 5.0
    for _ in range(8):
        x = target + c * math.log(max(x, 2.0))
    return x


_MAX_TERMS = 2_000_000


def _primitive_block(pd: PrimitiveData, s: complex, eps: float):
    """(V, D') with V = |U_K| (2pi)^(-s) Gamma(s) L(s, psi-hat)."""
    fd = field_data(pd.d)
    dprime = abs(fd.discriminant) * pd.norm_conductor
    y0 = dprime**-0.5
    xcut = _cutoff(s, eps * 1e-3)
    mmax = int(xcut / (2 * math.pi * y0)) + 1
    if mmax > _MAX_TERMS:
        raise PrecisionError(f"theta sums need {mmax} norms, over budget")
    sieve = ideal_sieve(pd.d, mmax)
    count = sieve.count_upto(mmax)
    vals = sieve.eval_multiplicative(pd.evaluate, count)
    norms = sieve.norms[:count].astype(np.float64)
    x = 2 * math.pi * y0 * norms
    log_2pin = np.log(2 * math.pi * norms)
    direct = vals * np.exp(-s * log_2pin) * upper_gamma(s, x)
    dual_pref = pd.gauss1 / (math.sqrt(abs(fd.discriminant)) * pd.norm_conductor)
    log_ratio = np.log(2 * math.pi * norms / dprime)
    dual = np.conj(vals) * np.exp((s - 1) * log_ratio) * upper_gamma(1 - s, x)
    v = fd.unit_count * (_csum(direct) + dual_pref * _csum(dual))
    return v, dprime


def _euler_factors(chi: HeckeChar, pd: PrimitiveData, s: complex) -> complex:
    """prod over primes of the declared modulus away from the conductor of
    (1 - psi-hat(pi) N(pi)^(-s))."""
    out = 1 + 0j
    fprimes = {(p.a, p.b) for p in pd.conductor_primes()}
    for pe, _ in chi.modulus_factorization():
        pi = pe.elem
        if (pi.a, pi.b) in fprimes:
            continue
        out *= 1 - pd.evaluate(pi) * pi.norm() ** (-complex(s))
    return out


def l_value(chi: HeckeChar, s: complex, eps: float = 1e-10) -> complex:
    """L(s, chi) for a Hecke character of trivial infinite type.

    Principal characters route through zeta_K (so s=1 raises); everything
    else is primitivized and evaluated by the split theta sums, then the
    imprimitive Euler factors are multiplied back on.
    """
    s = complex(s)
    pd = chi.primitive()
    if pd.conductor.is_unit():
        base = zeta_K(chi.d, s)
        return base * _euler_factors(chi, pd, s)
    v, _ = _primitive_block(pd, s, eps)
    fd = field_data(chi.d)
    lhat = v * cmath.exp(s * math.log(2 * math.pi)) * complex(_rgamma(s)) / fd.unit_count
    return lhat * _euler_factors(chi, pd, s)


def lambda_from_primitive(pd: PrimitiveData, s: complex, eps: float = 1e-10) -> complex:
    """Completed L-function Lambda(s) = (|D| N(f))^(s/2) (2pi)^-s Gamma(s) L(s)
    of a primitive non-principal character, computed without Gamma division."""
    if pd.conductor.is_unit():
        raise ValueError("completed L of the principal character has poles")
    v, dprime = _primitive_block(pd, s, eps)
    fd = field_data(pd.d)
    return dprime ** (complex(s) / 2) * v / fd.unit_count


def lambda_completed(chi: HeckeChar, s: complex, eps: float = 1e-10) -> complex:
    return lambda_from_primitive(chi.primitive(), s, eps)


def fe_residual(chi: HeckeChar, s: complex, eps: float = 1e-10) -> tuple[float, float]:
    """(|Lambda(s) - W Lambda-bar(1-s)|, ||W| - 1|) for the primitivization."""
    pd = chi.primitive()
    lam_s = lambda_from_primitive(pd, s, eps)
    lam_dual = lambda_from_primitive(pd.conj(), 1 - complex(s), eps)
    return abs(lam_s - pd.root_number * lam_dual), abs(abs(pd.root_number) - 1.0)


# ---------------------------------------------------------------------------
# Theta identity and dual series (direct checks on imprimitive characters)
# ---------------------------------------------------------------------------


def _char_box_table(chi: HeckeChar):
    """Values of chi over the HNF box of its modulus."""
    q = chi.modulus
    h = hnf(q)
    table = np.zeros(h.size(), dtype=np.complex128)
    from .fields import residues

    for x in residues(q):
        table[h.index(x)] = chi.evaluate(x)
    return h, table


_GAUSS_TABLE_BUDGET = 4000


def _gauss_table(chi: HeckeChar):
    """g_K(k, chi) for k over the HNF box of the modulus (periodic in k).

    Quadratic cost in N(modulus); intended for the small moduli of the
    theta-identity and dual-series checks."""
    q = chi.modulus
    if q.norm() > _GAUSS_TABLE_BUDGET:
        raise PrecisionError(
            f"Gauss table over modulus of norm {q.norm()} exceeds the budget"
        )
    h, vtab = _char_box_table(chi)
    nq = q.norm()
    qc = q.conj()
    phases = np.exp(2j * np.pi * np.arange(nq) / nq)
    from .fields import residues

    # phase of e_K(k x / q) is linear in the box coordinates of x
    ii, jj = np.meshgrid(
        np.arange(h.A, dtype=np.int64), np.arange(h.D, dtype=np.int64), indexing="ij"
    )
    ii = ii.ravel()
    jj = jj.ravel()
    omega = Elem(0, 1, q.d)
    gtab = np.zeros(h.size(), dtype=np.complex128)
    for k in residues(q):
        kc = k * qc
        t1 = kc.b
        t2 = (kc * omega).b
        ph = (ii * t1 + jj * t2) % nq
        gtab[h.index(k)] = np.sum(vtab * phases[ph])
    return h, gtab


def _lattice_arrays(d: int, limit: int):
    """Coordinate and norm arrays of all nonzero elements with N <= limit."""
    fd = field_data(d)
    if d % 4 == 1:
        c = (1 - d) // 4
        bmax = math.isqrt(4 * limit // (-d))
        rows = []
        for b in range(-bmax, bmax + 1):
            disc = 4 * limit + d * b * b
            if disc < 0:
                continue
            sq = math.isqrt(disc)
            amin = (-b - sq + 1) // 2 if (sq + b) % 2 else (-b - sq) // 2
            amax = (sq - b) // 2
            a = np.arange(amin, amax + 1, dtype=np.int64)
            n = a * a + a * b + b * b * c
            keep = (n >= 1) & (n <= limit)
            rows.append((a[keep], np.full(keep.sum(), b, dtype=np.int64), n[keep]))
    else:
        bmax = math.isqrt(limit // (-d))
        rows = []
        for b in range(-bmax, bmax + 1):
            sq = math.isqrt(limit + d * b * b)
            a = np.arange(-sq, sq + 1, dtype=np.int64)
            n = a * a - d * b * b
            keep = (n >= 1) & (n <= limit)
            rows.append((a[keep], np.full(keep.sum(), b, dtype=np.int64), n[keep]))
    aa = np.concatenate([r[0] for r in rows])
    bb = np.concatenate([r[1] for r in rows])
    nn = np.concatenate([r[2] for r in rows])
    return aa, bb, nn


def _box_indices(h, aa, bb):
    j = bb % h.D
    t = (bb - j) // h.D
    a2 = (aa - t * h.B) % h.A
    return a2 * h.D + j


def theta_identity_check(chi: HeckeChar, y: float, tail: float = 1e-12):
    """Both sides of the theta identity at y for a non-principal character.

    lhs = sum_m chi(m) exp(-2 pi y N(m));
    rhs = (|D| y N(n))^-1 * sum_k g(k, chi) exp(-2 pi N(k) / (|D| y N(n))).
    Returns (lhs, rhs, |lhs - rhs|).
    """
    if chi.primitive().conductor.is_unit():
        raise ValueError("theta identity requires a non-principal character")
    fd = field_data(chi.d)
    dd = abs(fd.discriminant)
    nq = chi.modulus.norm()
    log_inv = -math.log(tail) + 8.0
    # lhs over ideals
    m_limit = max(2, int(log_inv / (2 * math.pi * y)) + 1)
    sieve = ideal_sieve(chi.d, m_limit)
    count = sieve.count_upto(m_limit)
    vals = sieve.eval_multiplicative(chi.evaluate, count)
    norms = sieve.norms[:count].astype(np.float64)
    lhs = fd.unit_count * _csum(vals * np.exp(-2 * math.pi * y * norms))
    # rhs over the dual lattice, Gauss coefficients periodic mod the modulus
    h, gtab = _gauss_table(chi)
    k_limit = max(2, int(dd * y * nq * log_inv / (2 * math.pi)) + 1)
    aa, bb, nn = _lattice_arrays(chi.d, k_limit)
    idx = _box_indices(h, aa, bb)
    terms = gtab[idx] * np.exp(-2 * math.pi * nn / (dd * y * nq))
    rhs = _csum(terms) / (math.sqrt(dd) * y * nq)
    return lhs, rhs, abs(lhs - rhs)


def dual_series_check(chi: HeckeChar, s: complex, norm_budget: int = 2_000_000):
    """Prop-style dual series at Re(s) < -1/2:

    rhs = N(n)^-s (2pi/sqrt|D|)^(2s-1) Gamma(1-s)/(|U| Gamma(s))
          * sum_{k != 0} g(k, chi) N(k)^(s-1),
    compared against the analytically continued l_value.  The k-sum
    converges only polynomially, so rhs carries the truncation error of
    norm_budget; at s=-1 the Gamma prefactor vanishes identically.
    Returns (lhs, rhs, |lhs - rhs|).
    """
    s = complex(s)
    if s.real >= -0.5:
        raise ValueError("dual series requires Re(s) < -1/2")
    fd = field_data(chi.d)
    if chi.primitive().conductor.is_unit():
        raise ValueError("dual series requires g(0, chi) = 0 (non-principal)")
    lhs = l_value(chi, s)
    nq = chi.modulus.norm()
    dd = abs(fd.discriminant)
    h, gtab = _gauss_table(chi)
    aa, bb, nn = _lattice_arrays(chi.d, norm_budget)
    idx = _box_indices(h, aa, bb)
    weights = np.exp((s - 1) * np.log(nn.astype(np.float64)))
    ksum = complex(np.sum(gtab[idx] * weights))
    pref = (
        nq ** (-s)
        * (2 * math.pi / math.sqrt(dd)) ** (2 * s - 1)
        * complex(_cgamma(1 - s))
        * complex(_rgamma(s))
        / fd.unit_count
    )
    rhs = pref * ksum
    return lhs, rhs, abs(lhs - rhs)


def dirichlet_series_direct(chi: HeckeChar, s: complex, limit: int) -> complex:
    """Oracle: sum over ideals of chi N^-s truncated at `limit`, via a value
    table over the modulus box and a vectorized lattice sweep."""
    h, vtab = _char_box_table(chi)
    aa, bb, nn = _lattice_arrays(chi.d, limit)
    idx = _box_indices(h, aa, bb)
    weights = np.exp(-complex(s) * np.log(nn.astype(np.float64)))
    fd = field_data(chi.d)
    return complex(np.sum(vtab[idx] * weights)) / fd.unit_count
