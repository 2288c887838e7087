"""Smoothed first-moment experiments for the quadratic and higher-order
Hecke L-function families.

The left side is the brute-force family average: enumerate all nonzero n
with N(n) inside the support of the weight, build the twisted character for
each family member, and evaluate L(1/2 + alpha, .) through the functional
equation machinery.  The main terms are the closed forms picked up at the
poles of the associated double Dirichlet series: for the quadratic family a
residue at s=1 (zeta ratio with a correction at the primes of B_K) plus a
residue at s=1-alpha (Gamma/zeta factor), for higher order a single
residue at s=1 involving L(j w, chi^j)/L(1 + j w, chi^j) averaged over the
ray classes.  The literal product-form reading of the higher-order main
term is also computed so experiments can record which form fits.

Reductions over n happen in canonical (norm, a, b) order with exact
compensated summation, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import fsum
from typing import Callable

from scipy.integrate import quad
from scipy.special import gamma as _cgamma

from .fields import Elem, enumerate_norm_range, factor, field_data
from .hecke import c_k_family, char_from_symbol, ray_class_group
from .lfunctions import l_value
from .symbols import check_order
from .zeta import zeta_K

__all__ = [
    "TestFunction",
    "default_phi",
    "mellin_phi",
    "MomentConfig",
    "MomentRow",
    "MomentReport",
    "lhs_quadratic",
    "mt_quadratic",
    "lhs_higher",
    "mt_higher",
    "run_experiment",
    "CSV_HEADER",
]


class TestFunction:
    """Smooth nonnegative weight supported on (1, 2) with numerical Mellin
    transform."""

    def __init__(self, evaluator: Callable[[float], float], name: str = "custom"):
        self._eval = evaluator
        self.support = (1.0, 2.0)
        self.name = name
        self._mellin_cache: dict[complex, complex] = {}

    def __call__(self, x: float) -> float:
        if x <= self.support[0] or x >= self.support[1]:
            return 0.0
        return self._eval(x)

    def mellin(self, s: complex) -> complex:
        s = complex(s)
        v = self._mellin_cache.get(s)
        if v is None:
            v = mellin_phi(self, s)
            self._mellin_cache[s] = v
        return v


def _bump(x: float) -> float:
    return math.exp(-1.0 / ((x - 1.0) * (2.0 - x)))


@lru_cache(maxsize=4)
def default_phi() -> TestFunction:
    """exp(-1/((x-1)(2-x))) on (1,2): smooth, compactly supported, cheap."""
    return TestFunction(_bump, name="default")


_PHI_REGISTRY: dict[str, Callable[[], TestFunction]] = {"default": default_phi}


def _phi_by_name(name: str) -> TestFunction:
    try:
        return _PHI_REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown test function {name!r}") from None


def mellin_phi(phi: TestFunction, s: complex) -> complex:
    """Mellin transform of phi at s by adaptive quadrature over (1, 2)."""
    s = complex(s)

    def re_part(t: float) -> float:
        return (phi(t) * t ** (s - 1)).real

    def im_part(t: float) -> float:
        return (phi(t) * t ** (s - 1)).imag

    lo, hi = phi.support
    re, _ = quad(re_part, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)
    im, _ = quad(im_part, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)
    return complex(re, im)


# ---------------------------------------------------------------------------
# Configuration and results
# ---------------------------------------------------------------------------


@dataclass
class MomentConfig:
    d: int
    j: int
    alpha: complex
    x_list: tuple[float, ...]
    S: int | None = None  # ray modulus, j > 2 only; default j*j
    eps: float = 1e-9
    threads: int = 1
    phi_name: str = "default"

    def __post_init__(self):
        check_order(self.d, self.j)
        a = complex(self.alpha)
        if not 0 < a.real < 0.5:
            raise ValueError("alpha must satisfy 0 < Re(alpha) < 1/2")
        if self.j > 2 and self.S is None:
            self.S = self.j * self.j
        if self.j > 2 and self.S % (self.j * self.j) != 0:
            raise ValueError("S must be divisible by j^2")

    def resolved(self) -> dict:
        return {
            "field": f"Q(sqrt({self.d}))",
            "d": self.d,
            "j": self.j,
            "alpha_re": complex(self.alpha).real,
            "alpha_im": complex(self.alpha).imag,
            "X_list": list(self.x_list),
            "S": self.S,
            "eps": self.eps,
            "threads": self.threads,
            "phi": self.phi_name,
        }


@dataclass
class MomentRow:
    X: float
    lhs: complex
    mt1: complex
    mt2: complex  # 0 for j > 2
    ratio: complex
    n_count: int
    seconds: float
    extras: dict = dc_field(default_factory=dict)


@dataclass
class MomentReport:
    config: MomentConfig
    rows: list[MomentRow]
    diagnostics: dict

    def to_csv(self, include_timing: bool = True) -> str:
        lines = [CSV_HEADER if include_timing else CSV_HEADER.rsplit(",", 1)[0]]
        cfg = self.config
        for r in self.rows:
            vals = [
                f"Q(sqrt({cfg.d}))",
                str(cfg.d),
                str(cfg.j),
                _fmt(complex(cfg.alpha).real),
                _fmt(complex(cfg.alpha).imag),
                _fmt(r.X),
                _fmt(r.lhs.real),
                _fmt(r.lhs.imag),
                _fmt(r.mt1.real),
                _fmt(r.mt1.imag),
                _fmt(r.mt2.real),
                _fmt(r.mt2.imag),
                _fmt(r.ratio.real),
                _fmt(r.ratio.imag),
                str(r.n_count),
            ]
            if include_timing:
                vals.append(_fmt(r.seconds))
            lines.append(",".join(vals))
        return "\n".join(lines) + "\n"

    def to_json(self, include_timing: bool = True) -> str:
        out = {
            "config": self.config.resolved(),
            "rows": [
                {
                    "X": r.X,
                    "lhs": [r.lhs.real, r.lhs.imag],
                    "mt1": [r.mt1.real, r.mt1.imag],
                    "mt2": [r.mt2.real, r.mt2.imag],
                    "ratio": [r.ratio.real, r.ratio.imag],
                    "n_count": r.n_count,
                    **({"seconds": r.seconds} if include_timing else {}),
                    **{k: v for k, v in r.extras.items()},
                }
                for r in self.rows
            ],
            "diagnostics": self.diagnostics,
        }
        return json.dumps(out, indent=2, sort_keys=True)


CSV_HEADER = (
    "field,d,j,alpha_re,alpha_im,X,lhs_re,lhs_im,mt1_re,mt1_im,"
    "mt2_re,mt2_im,ratio_re,ratio_im,n_count,seconds"
)


def _fmt(x: float) -> str:
    return f"{x:.15g}"


# ---------------------------------------------------------------------------
# Left-hand sides (brute force over the family)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _twists(d: int):
    return tuple(c_k_family(d))


@lru_cache(maxsize=16)
def _ray_chars(d: int, S: int):
    return ray_class_group(d, S)


def _quad_term(args) -> complex:
    """Weighted family value at one n (worker-safe; pure in its arguments)."""
    d, are, aim, x_val, a, b, eps, phi_name = args
    phi = _phi_by_name(phi_name)
    n = Elem(a, b, d)
    w = phi(n.norm() / x_val)
    if w == 0.0:
        return 0j
    s = 0.5 + complex(are, aim)
    total = 0j
    for tw in _twists(d):
        chi = char_from_symbol(n, 2, tw)
        try:
            total += l_value(chi, s, eps)
        except Exception as exc:  # pragma: no cover - diagnostic path
            raise RuntimeError(f"L-value failed at n={n} twist={tw.label}") from exc
    return 0.5 * w * total


def _higher_term(args) -> complex:
    d, j, S, are, aim, x_val, a, b, eps, phi_name = args
    phi = _phi_by_name(phi_name)
    n = Elem(a, b, d)
    w = phi(n.norm() / x_val)
    if w == 0.0:
        return 0j
    s = 0.5 + complex(are, aim)
    rcg = _ray_chars(d, S)
    total = 0j
    for chi0 in rcg.characters:
        chi = char_from_symbol(n, j, chi0)
        try:
            total += l_value(chi, s, eps)
        except Exception as exc:  # pragma: no cover
            raise RuntimeError(f"L-value failed at n={n} char={chi0.label}") from exc
    return w * total / rcg.count


def _parallel_sum(task_fn, tasks, threads: int) -> complex:
    """Map in parallel, reduce in task order with exact summation."""
    if threads <= 1:
        values = [task_fn(t) for t in tasks]
    else:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(processes=threads) as pool:
            values = pool.map(task_fn, tasks, chunksize=8)
    return complex(fsum(v.real for v in values), fsum(v.imag for v in values))


def _enumerate_family(d: int, x_val: float) -> list[Elem]:
    lo = int(math.floor(x_val)) + 1
    hi = int(math.ceil(2 * x_val)) - 1
    return enumerate_norm_range(d, lo, hi)


def lhs_quadratic(
    d: int,
    alpha: complex,
    x_val: float,
    phi: TestFunction | None = None,
    eps: float = 1e-9,
    threads: int = 1,
) -> tuple[complex, int]:
    """(1/2) sum over twists and over 0 != n of L(1/2+alpha, twist*(n/.)_2)
    weighted by phi(N(n)/X).  Returns (value, number of enumerated n)."""
    phi_name = phi.name if phi is not None else "default"
    if phi is not None and phi.name not in _PHI_REGISTRY:
        raise ValueError("custom weights must be registered for worker use")
    alpha = complex(alpha)
    ns = _enumerate_family(d, x_val)
    tasks = [
        (d, alpha.real, alpha.imag, x_val, n.a, n.b, eps, phi_name) for n in ns
    ]
    return _parallel_sum(_quad_term, tasks, threads), len(ns)


def lhs_higher(
    d: int,
    j: int,
    alpha: complex,
    x_val: float,
    phi: TestFunction | None = None,
    S: int | None = None,
    eps: float = 1e-9,
    threads: int = 1,
) -> tuple[complex, int]:
    """Ray-class-averaged family sum for j in {3, 4, 6}."""
    check_order(d, j)
    if j == 2:
        raise ValueError("use lhs_quadratic for j=2")
    S = j * j if S is None else S
    phi_name = phi.name if phi is not None else "default"
    alpha = complex(alpha)
    ns = _enumerate_family(d, x_val)
    tasks = [
        (d, j, S, alpha.real, alpha.imag, x_val, n.a, n.b, eps, phi_name)
        for n in ns
    ]
    return _parallel_sum(_higher_term, tasks, threads), len(ns)


# ---------------------------------------------------------------------------
# Main terms (closed forms)
# ---------------------------------------------------------------------------


def _b_primes(d: int) -> list[Elem]:
    fd = field_data(d)
    _, fac = factor(fd.b_constant)
    return [pe.elem for pe, _ in fac]


def mt_quadratic(
    d: int, alpha: complex, x_val: float, phi: TestFunction | None = None
) -> tuple[complex, complex]:
    """The two main terms of the quadratic first moment at X.

    The first is X phihat(1) |U_K| r_K L(1+2a, psi1)/L(2+2a, psi1) with psi1
    the principal character modulo B_K, i.e. the Dedekind zeta ratio with
    the factors (1 - N^-(1+2a))/(1 - N^-(2+2a)) restored at the primes of
    B_K; the second is the residue picked up at s = 1-alpha.
    """
    phi = phi or default_phi()
    alpha = complex(alpha)
    fd = field_data(d)
    u = fd.unit_count
    rk = fd.residue_at_one
    prod1 = 1 + 0j
    prod2 = 1 + 0j
    for p in _b_primes(d):
        np_ = p.norm()
        prod1 *= (1 - np_ ** (-(1 + 2 * alpha))) / (1 - np_ ** (-(2 + 2 * alpha)))
        prod2 /= 1 + 1 / np_
    mt1 = (
        x_val
        * phi.mellin(1)
        * u
        * rk
        * zeta_K(d, 1 + 2 * alpha)
        / zeta_K(d, 2 + 2 * alpha)
        * prod1
    )
    gamma_factor = (
        complex(_cgamma(1 - 2 * alpha))
        * complex(_cgamma(alpha))
        / (complex(_cgamma(1 - alpha)) * complex(_cgamma(2 * alpha)))
    )
    mt2 = (
        x_val ** (1 - alpha)
        * phi.mellin(1 - alpha)
        * (u * rk / 2)
        * (2 * math.pi / math.sqrt(abs(fd.discriminant))) ** (2 * alpha)
        * gamma_factor
        * zeta_K(d, 1 - 2 * alpha)
        / zeta_K(d, 2)
        * prod2
    )
    return mt1, mt2


def mt_higher(
    d: int,
    j: int,
    alpha: complex,
    x_val: float,
    phi: TestFunction | None = None,
    S: int | None = None,
    eps: float = 1e-10,
) -> tuple[complex, complex]:
    """Higher-order main term at X: (ratio form, literal product form).

    Ratio form (the residue computation):
        X phihat(1) |U_K| r_K / #h * sum_chi L(j w, chi^j) / L(1 + j w, chi^j)
    Product form (the literal display, kept for the typo-resolution record):
        X phihat(1) r_K / #h * sum_chi L(j w, chi^j) * L(1 + j w, chi^j)
    with w = 1/2 + alpha.
    """
    phi = phi or default_phi()
    alpha = complex(alpha)
    S = j * j if S is None else S
    fd = field_data(d)
    rcg = _ray_chars(d, S)
    w = 0.5 + alpha
    acc_ratio = 0j
    acc_prod = 0j
    for i in range(rcg.count):
        chi_j = rcg.char_power(i, j)
        num = l_value(chi_j, j * w, eps)
        den = l_value(chi_j, 1 + j * w, eps)
        acc_ratio += num / den
        acc_prod += num * den
    base = x_val * phi.mellin(1) * fd.residue_at_one / rcg.count
    return base * fd.unit_count * acc_ratio, base * acc_prod


# ---------------------------------------------------------------------------
# Experiment driver
# ---------------------------------------------------------------------------


def run_experiment(config: MomentConfig) -> MomentReport:
    """Run the configured moment experiment and assemble the report."""
    phi = _phi_by_name(config.phi_name)
    rows: list[MomentRow] = []
    for x_val in config.x_list:
        t0 = time.perf_counter()
        if config.j == 2:
            lhs, n_count = lhs_quadratic(
                config.d, config.alpha, x_val, phi, config.eps, config.threads
            )
            mt1, mt2 = mt_quadratic(config.d, config.alpha, x_val, phi)
            denom = mt1 + mt2
            extras = {}
        else:
            lhs, n_count = lhs_higher(
                config.d,
                config.j,
                config.alpha,
                x_val,
                phi,
                config.S,
                config.eps,
                config.threads,
            )
            mt1, mt2_alt = mt_higher(
                config.d, config.j, config.alpha, x_val, phi, config.S
            )
            mt2 = 0j
            denom = mt1
            extras = {
                "mt_product_form": [mt2_alt.real, mt2_alt.imag],
                "ratio_product_form": _safe_ratio(lhs, mt2_alt),
            }
        ratio = lhs / denom if denom != 0 else complex("nan")
        rows.append(
            MomentRow(
                X=x_val,
                lhs=lhs,
                mt1=mt1,
                mt2=mt2,
                ratio=ratio,
                n_count=n_count,
                seconds=time.perf_counter() - t0,
                extras=extras,
            )
        )
    devs = [abs(r.ratio - 1) for r in rows]
    diagnostics = {
        "abs_ratio_minus_one": devs,
        "non_increasing_20pct": all(
            devs[i + 1] <= 1.2 * devs[i] for i in range(len(devs) - 1)
        ),
    }
    if config.j > 2:
        diagnostics["product_form_abs_ratio_minus_one"] = [
            abs(complex(*r.extras["ratio_product_form"]) - 1) if r.extras else None
            for r in rows
        ]
    return MomentReport(config=config, rows=rows, diagnostics=diagnostics)


def _safe_ratio(a: complex, b: complex) -> list[float]:
    if b == 0:
        return [float("nan"), float("nan")]
    r = a / b
    return [r.real, r.imag]
