"""Command-line surface: verification suites, moment experiments, zeta
values, and report rendering.

Every run logs its fully resolved configuration (ISO-8601 timestamps) and
prints floats with 15 significant digits.  Exit codes: 0 all checks passed,
1 a check failed (first counterexample printed), 2 usage errors including
unsupported (field, j) combinations.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .fields import FIELD_DS
from .moments import MomentConfig, run_experiment
from .symbols import order_compatible
from .sweeps import (
    applicable_orders,
    dual_sweep,
    fe_sweep,
    gauss_multiplicativity_sweep,
    gauss_prime_sweep,
    gauss_primepower_sweep,
    gauss_twist_sweep,
    reciprocity_sweep,
    supplementary_sweep,
    theta_sweep,
)
from .zeta import ideal_sum_partial, residue_at_one, zeta_K

log = logging.getLogger("iqhecke")

USAGE_ERROR = 2
CHECK_FAILED = 1


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.15g} {z.imag:+.15g}i"


def _compat_table() -> str:
    lines = ["field/order compatibility:"]
    for d in FIELD_DS:
        lines.append(f"  d={d}: j in {applicable_orders(d)}")
    return "\n".join(lines)


def _parse_fields(txt: str) -> list[int]:
    if txt == "all":
        return list(FIELD_DS)
    out = []
    for part in txt.split(","):
        d = int(part)
        if d not in FIELD_DS:
            raise ValueError(f"d={d} is not a class-number-one value {FIELD_DS}")
        out.append(d)
    return out


def _load_config_file(path: str) -> dict:
    """Flat key=value text config; '#' comments allowed."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw!r}")
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _emit(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _report_sweep(name: str, res) -> bool:
    status = "ok" if res.ok else "FAIL"
    log.info("%s: %d checks, %d violations [%s]", name, res.checked, len(res.violations), status)
    if not res.ok:
        print(f"{name}: FIRST COUNTEREXAMPLE: {res.violations[0]}")
    return res.ok


def cmd_verify_symbols(args) -> int:
    ok = True
    for d in _parse_fields(args.field):
        orders = [args.j] if args.j else applicable_orders(d)
        for j in orders:
            if not order_compatible(d, j):
                print(_compat_table())
                return USAGE_ERROR
            res = reciprocity_sweep(d, j, args.max_norm)
            ok &= _report_sweep(f"reciprocity d={d} j={j} norm<={args.max_norm}", res)
        if d in (-1, -3):
            res = supplementary_sweep(d, args.max_norm_supplementary)
            ok &= _report_sweep(f"supplementary d={d}", res)
    return 0 if ok else CHECK_FAILED


def cmd_verify_gauss(args) -> int:
    ok = True
    for d in _parse_fields(args.field):
        ok &= _report_sweep(f"gauss prime d={d}", gauss_prime_sweep(d, args.max_norm))
        ok &= _report_sweep(
            f"gauss multiplicativity d={d}",
            gauss_multiplicativity_sweep(d, args.max_norm_pairs),
        )
        ok &= _report_sweep(
            f"gauss prime powers d={d}", gauss_primepower_sweep(d, args.max_norm_powers)
        )
        ok &= _report_sweep(f"gauss twist d={d}", gauss_twist_sweep(d))
    return 0 if ok else CHECK_FAILED


def cmd_verify_fe(args) -> int:
    ok = True
    s_values = (0.3, 0.5, 0.5 + 0.7j, 1.2)
    for d in _parse_fields(args.field):
        res = fe_sweep(d, count=args.count, s_values=s_values)
        ok &= _report_sweep(f"functional equation d={d}", res)
    return 0 if ok else CHECK_FAILED


def cmd_verify_theta(args) -> int:
    ok = True
    for d in _parse_fields(args.field):
        res = theta_sweep(d, count=args.count)
        ok &= _report_sweep(f"theta identity d={d}", res)
    return 0 if ok else CHECK_FAILED


def cmd_verify_dual(args) -> int:
    ok = True
    for d in _parse_fields(args.field):
        res = dual_sweep(d, count=args.count)
        ok &= _report_sweep(f"dual series d={d}", res)
    return 0 if ok else CHECK_FAILED


def cmd_zeta(args) -> int:
    for d in _parse_fields(args.field):
        s = complex(args.s)
        z = zeta_K(d, s)
        print(f"d={d}: zeta_K({_fmt_complex(s)}) = {_fmt_complex(z)}")
        print(f"d={d}: residue at 1 = {_fmt(residue_at_one(d))}")
        if args.check_direct:
            direct = ideal_sum_partial(d, s, args.direct_limit)
            print(
                f"d={d}: direct ideal sum (norm<={args.direct_limit}) = "
                f"{_fmt_complex(direct)}  |diff| = {_fmt(abs(z - direct))}"
            )
    return 0


def cmd_moment(args) -> int:
    fields = _parse_fields(args.field)
    rc = 0
    for d in fields:
        if not order_compatible(d, args.j):
            print(_compat_table())
            return USAGE_ERROR
        config = MomentConfig(
            d=d,
            j=args.j,
            alpha=complex(args.alpha),
            x_list=tuple(float(x) for x in args.x.split(",")),
            S=args.S,
            eps=args.eps,
            threads=args.threads,
        )
        log.info("moment config: %s", json.dumps(config.resolved(), sort_keys=True))
        report = run_experiment(config)
        text = (
            report.to_json(include_timing=not args.no_timing)
            if args.format == "json"
            else report.to_csv(include_timing=not args.no_timing)
        )
        _emit(args.output, text)
        for row in report.rows:
            log.info(
                "X=%s ratio=%s |ratio-1|=%s",
                _fmt(row.X),
                _fmt_complex(row.ratio),
                _fmt(abs(row.ratio - 1)),
            )
    return rc


def cmd_report(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    cfg = data["config"]
    print(f"field {cfg['field']}  j={cfg['j']}  alpha={cfg['alpha_re']}+{cfg['alpha_im']}i")
    print(f"{'X':>10} {'ratio_re':>20} {'ratio_im':>14} {'|ratio-1|':>12} {'n':>7}")
    for row in data["rows"]:
        ratio = complex(row["ratio"][0], row["ratio"][1])
        print(
            f"{row['X']:>10} {ratio.real:>20.15g} {ratio.imag:>14.3g} "
            f"{abs(ratio - 1):>12.4g} {row['n_count']:>7}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iqhecke",
        description="Residue symbols, Gauss sums, Hecke L-functions and "
        "first-moment experiments over the class-number-one imaginary "
        "quadratic fields.",
    )
    ap.add_argument("--config", help="flat key=value config file; flags override")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    ap.add_argument("--output", help="output path (default stdout)")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-symbols", help="reciprocity and supplementary sweeps")
    p.add_argument("--field", default="all")
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--max-norm", type=int, default=500)
    p.add_argument("--max-norm-supplementary", type=int, default=2000)
    p.set_defaults(func=cmd_verify_symbols)

    p = sub.add_parser("verify-gauss", help="Gauss sum closed forms vs direct sums")
    p.add_argument("--field", default="all")
    p.add_argument("--max-norm", type=int, default=500)
    p.add_argument("--max-norm-pairs", type=int, default=300)
    p.add_argument("--max-norm-powers", type=int, default=2000)
    p.set_defaults(func=cmd_verify_gauss)

    p = sub.add_parser("verify-fe", help="functional equation residuals")
    p.add_argument("--field", default="all")
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_verify_fe)

    p = sub.add_parser("verify-theta", help="theta identity agreement")
    p.add_argument("--field", default="all")
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_verify_theta)

    p = sub.add_parser("verify-dual", help="dual series vs continued L-values")
    p.add_argument("--field", default="all")
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_verify_dual)

    p = sub.add_parser("zeta", help="Dedekind zeta values and residues")
    p.add_argument("--field", default="all")
    p.add_argument("--s", default="2.0")
    p.add_argument("--check-direct", action="store_true")
    p.add_argument("--direct-limit", type=int, default=10**6)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("moment", help="first-moment experiment")
    p.add_argument("--field", required=True)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--alpha", default="0.25")
    p.add_argument("--x", default="100,200,500")
    p.add_argument("--S", type=int, default=None)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--no-timing", action="store_true", help="omit the seconds column")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("report", help="render a JSON moment report")
    p.add_argument("input")
    p.set_defaults(func=cmd_report)
    return ap


_SUBCOMMANDS = (
    "verify-symbols",
    "verify-gauss",
    "verify-fe",
    "verify-theta",
    "verify-dual",
    "zeta",
    "moment",
    "report",
)
_GLOBAL_KEYS = {"threads", "seed", "output", "format"}


def _apply_config(argv: list[str]) -> list[str]:
    """Expand a --config file into argv tokens placed before the explicit
    flags, so explicit flags override the file (argparse last-wins)."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            break
    if path is None:
        return argv
    overrides = _load_config_file(path)
    global_toks, sub_toks = [], []
    for key, val in overrides.items():
        tok = f"--{key}={val}"
        if key.replace("-", "_") in _GLOBAL_KEYS:
            global_toks.append(tok)
        else:
            sub_toks.append(tok)
    sub_idx = next((i for i, t in enumerate(argv) if t in _SUBCOMMANDS), None)
    if sub_idx is None:
        return global_toks + argv
    return global_toks + argv[: sub_idx + 1] + sub_toks + argv[sub_idx + 1 :]


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
    )
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        argv = _apply_config(list(argv))
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0,) else 0
    except (OSError, ValueError) as exc:
        print(f"usage error: {exc}")
        return USAGE_ERROR
    log.info("resolved config: %s", json.dumps(
        {k: v for k, v in vars(args).items() if k != "func"}, default=str, sort_keys=True
    ))
    t0 = time.perf_counter()
    try:
        rc = args.func(args)
    except ValueError as exc:
        print(f"usage error: {exc}")
        print(_compat_table())
        return USAGE_ERROR
    log.info("done in %.3fs rc=%d", time.perf_counter() - t0, rc)
    return rc


if __name__ == "__main__":
    sys.exit(main())
