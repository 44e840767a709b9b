"""Command-line surface: counts, profiles, moments, sweeps, arcs, kernels.

Every run embeds its full configuration as `#`-prefixed comment lines ahead
of the CSV data, so any output file can be reproduced from its own header.
Exit codes: 0 success (verdicts, if any, within tolerance), 1 verdict
failure, 2 usage error, 3 budget or resource refusal.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

import numpy as np

from .arcs import build_dissection
from .counting import (SystemSpec, count_brute, count_mitm, dump_profile,
                       profile, profile_brute)
from .cutoffs import CutoffConfig, g_bound, g_exact, phi_hat
from .errors import BudgetError
from .experiments import (_fmt, CSV_HEADER, format_rows, summary_block,
                          sweep_windowed_quintic, sweep_moment, write_csv, SweepRow)
from .moments import MomentSpec, compute_moment

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


class _Parser(argparse.ArgumentParser):
    # argparse calls sys.exit(2) on errors; re-raise so run() can map codes
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    top = _Parser(prog="vmvt", description=__doc__)
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=None,
                       help="worker count (default: VMVT_THREADS or 1)")

    p = sub.add_parser("count", help="exact solution count of one system")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zero", type=_parse_int_list, default=[])
    p.add_argument("--window-power", type=int, default=None)
    p.add_argument("--window-h", type=int, default=None)
    p.add_argument("--upper", type=int, default=None)
    p.add_argument("--engine", choices=["mitm", "brute"], default="mitm")
    common(p)

    p = sub.add_parser("profile", help="exact frequency profile of one power sum")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zero", type=_parse_int_list, default=[])
    p.add_argument("--profile-power", type=int, required=True)
    p.add_argument("--upper", type=int, default=None)
    p.add_argument("--engine", choices=["mitm", "brute"], default="mitm")
    p.add_argument("--dump", default=None, help="write binary profile dump here")
    common(p)

    p = sub.add_parser("moment", help="one restricted-box moment value")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--s", type=int, help="even moment p = 2s")
    g.add_argument("--p", type=float, help="general moment exponent")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restricted-power", type=int, default=-1)
    p.add_argument("--method", choices=["exact", "mc", "quadrature"],
                   default="exact")
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("sweep", help="N-grid sweep with slope verdict")
    p.add_argument("--d", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--s", type=int)
    g.add_argument("--p", type=float)
    p.add_argument("--u", type=float)
    p.add_argument("--grid", type=_parse_int_list, required=True)
    p.add_argument("--restricted-power", type=int, default=-1)
    p.add_argument("--method", choices=["exact", "mc"], default="exact")
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--windowed-quintic", action="store_true",
                   help="sweep the windowed cubic ten-variable count instead")
    common(p)

    p = sub.add_parser("arcs", help="major-arc dissection summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--d", type=int, default=3)
    common(p)

    p = sub.add_parser("kernels", help="cutoff transform / kernel tables")
    p.add_argument("--phi-hat-max", type=float, default=10.0)
    p.add_argument("--phi-hat-step", type=float, default=0.5)
    p.add_argument("--g-alpha", type=float, default=None,
                   help="also tabulate G(t, alpha) and its bound at this alpha")
    p.add_argument("--u", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--d", type=int, default=3)
    common(p)

    p = sub.add_parser("selftest", help="oracle-equivalence suite")
    common(p)
    return top


def _emit(out_path, text: str):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _config_lines(args, skip=("out", "workers")) -> list:
    lines = []
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        if isinstance(v, list):
            v = ",".join(str(x) for x in v)
        lines.append(f"# {k}={_fmt(v)}")
    return lines


def _resolve_workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("VMVT_THREADS")
    return max(1, int(env)) if env else 1


def _row_text(args, N, value, stderr, method, runtime_ms) -> str:
    row = SweepRow(N=N, value=value, stderr=stderr, method=method,
                   runtime_ms=runtime_ms)
    return "\n".join(_config_lines(args) + format_rows([row])) + "\n"


def _cmd_count(args) -> int:
    window = None
    if (args.window_power is None) != (args.window_h is None):
        raise _UsageError("--window-power and --window-h go together")
    if args.window_power is not None:
        window = (args.window_power, args.window_h)
    spec = SystemSpec(d=args.d, s=args.s, N=args.n,
                      zero_powers=frozenset(args.zero), window=window,
                      upper=args.upper)
    res = (count_brute if args.engine == "brute" else count_mitm)(spec)
    _emit(args.out, _row_text(args, args.n, float(res.count), 0.0,
                              res.method, res.elapsed * 1e3))
    return EXIT_OK


def _cmd_profile(args) -> int:
    spec = SystemSpec(d=args.d, s=args.s, N=args.n,
                      zero_powers=frozenset(args.zero),
                      profile_power=args.profile_power, upper=args.upper)
    t0 = time.perf_counter()
    prof = (profile_brute if args.engine == "brute" else profile)(spec)
    elapsed = (time.perf_counter() - t0) * 1e3
    if args.dump is not None:
        with open(args.dump, "wb") as fh:
            dump_profile(prof, fh)
    lines = _config_lines(args) + [f"# runtime_ms={_fmt(elapsed)}", "b,r"]
    lines += [f"{b},{prof.counts[b]}" for b in sorted(prof.counts)]
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_moment(args) -> int:
    p = float(2 * args.s) if args.s is not None else args.p
    method = {"exact": "exact_even", "mc": "monte_carlo",
              "quadrature": "quadrature"}[args.method]
    spec = MomentSpec(d=args.d, p=p, u=args.u, N=args.n,
                      restricted_power=args.restricted_power, method=method)
    t0 = time.perf_counter()
    res = compute_moment(spec, samples=args.samples, seed=args.seed)
    _emit(args.out, _row_text(args, args.n, res.value, res.stderr,
                              method, (time.perf_counter() - t0) * 1e3))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = {k: (",".join(str(x) for x in v) if isinstance(v, list) else v)
           for k, v in sorted(vars(args).items())
           if k not in ("out", "workers") and v is not None}
    if args.windowed_quintic:
        if args.tolerance is not None:
            res = sweep_windowed_quintic(args.grid, tolerance=args.tolerance)
        else:
            res = sweep_windowed_quintic(args.grid)
    else:
        if args.d is None or args.u is None or (args.s is None and args.p is None):
            raise _UsageError("sweep needs --d, --u and one of --s/--p")
        p = float(2 * args.s) if args.s is not None else args.p
        method = "monte_carlo" if args.method == "mc" else "exact_even"
        res = sweep_moment(args.d, p, args.u, args.grid, method=method,
                           restricted_power=args.restricted_power,
                           samples=args.samples, seed=args.seed,
                           tolerance=args.tolerance)
    buf = []
    write_csv(_ListWriter(buf), res.rows, cfg, summary_block(res))
    _emit(args.out, "".join(buf))
    return EXIT_OK if res.verdict in ("within_tol", "no_prediction") \
        else EXIT_VERDICT


class _ListWriter:
    def __init__(self, sink):
        self.sink = sink

    def write(self, text):
        self.sink.append(text)


def _cmd_arcs(args) -> int:
    dis = build_dissection(args.n, args.u, args.d)
    lines = _config_lines(args)
    lines += [
        f"# Q={dis.Q}",
        f"# width_unit={_fmt(dis.width)}",
        f"# arc_count={len(dis.arcs)}",
        f"# total_measure={_fmt(dis.total_measure)}",
        f"# overlap_measure={_fmt(dis.overlap_measure)}",
        "q,a,lo,hi",
    ]
    lines += [f"{r.q},{r.a},{_fmt(lo)},{_fmt(hi)}"
              for (r, (lo, hi)) in dis.arcs]
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_kernels(args) -> int:
    lines = _config_lines(args) + ["xi,phi_hat"]
    xi = 0.0
    while xi <= args.phi_hat_max + 1e-12:
        lines.append(f"{_fmt(xi)},{_fmt(phi_hat(xi))}")
        xi += args.phi_hat_step
    if args.g_alpha is not None:
        cfg = CutoffConfig(A=args.u - args.eps, N=args.n, eps=args.eps)
        lines.append("t,g_exact,g_bound")
        bound = g_bound(args.g_alpha, args.u, args.n, args.eps, degree=args.d)
        for t in np.linspace(0.0, 1.0, 17):
            gv = g_exact(float(t), args.g_alpha, cfg, args.u, degree=args.d)
            lines.append(f"{_fmt(float(t))},{_fmt(gv)},{_fmt(bound)}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_selftest(args) -> int:
    """Small oracle-equivalence suite; prints one line per check."""
    from .phases import verify_shift_identity
    from .cutoffs import psi, psi_fourier
    checks = []

    spec = SystemSpec(d=3, s=2, N=6, zero_powers={1, 3})
    checks.append(("count mitm=brute",
                   count_mitm(spec).count == count_brute(spec).count))
    spec = SystemSpec(d=3, s=2, N=5, zero_powers={1}, window=(2, 4))
    checks.append(("windowed mitm=brute",
                   count_mitm(spec).count == count_brute(spec).count))
    m = compute_moment(MomentSpec(d=2, p=2, u=0.5, N=16))
    checks.append(("parseval", abs(m.value - 16**0.5) <= 1e-9 * m.value))
    e = compute_moment(MomentSpec(d=2, p=4, u=0.5, N=4, restricted_power=1))
    q = compute_moment(MomentSpec(d=2, p=4, u=0.5, N=4, restricted_power=1,
                                  method="quadrature"))
    checks.append(("exact=quadrature", abs(e.value - q.value) <= 1e-6 * q.value))
    dev = verify_shift_identity((0.905, 0.421, 0.137), 3, 24)
    checks.append(("shift identity", dev <= 1e-10))
    checks.append(("poisson",
                   abs(psi(0.95, 0.3, 8) - psi_fourier(0.95, 0.3, 8)) <= 1e-8))

    out = []
    ok = True
    for name, passed in checks:
        ok = ok and passed
        out.append(f"{'PASS' if passed else 'FAIL'} {name}")
    out.append("selftest " + ("ok" if ok else "FAILED"))
    _emit(args.out, "\n".join(out) + "\n")
    return EXIT_OK if ok else EXIT_VERDICT


_DISPATCH = {
    "count": _cmd_count,
    "profile": _cmd_profile,
    "moment": _cmd_moment,
    "sweep": _cmd_sweep,
    "arcs": _cmd_arcs,
    "kernels": _cmd_kernels,
    "selftest": _cmd_selftest,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.workers = _resolve_workers(args)
        return _DISPATCH[args.subcommand](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
