"""Command-line surface: reproducible scans, phase diagrams, verification.

Output is CSV (RFC-4180 quoting, '.' decimal point, 17 significant digits)
or JSON lines via --format; every JSON object carries a schema_version
field.  Identical invocations produce byte-identical output regardless of
--threads: worker count only schedules the fixed reduction blocks.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 resource cap exceeded / integer capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import backend, bench, rg, suites
from .analysis import farey_moments, fss_fit, extrapolate_f, moment_scaling_report
from .chain import BETA_C, EnsembleParams, free_energy_sequence, log_partition, thermo_point
from .errors import EnumerationCapExceededError, ExactIntegerOverflowError, NoRealRootError
from .kdp import KdpParams, KdpVariant, kdp_phase_boundary, kdp_discontinuities

SCHEMA_VERSION = 1


def _parse_range(text):
    """A:B:STEP with STEP > 0 and A <= B; endpoint included (float-safe)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range must be MIN:MAX:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from None
    if step <= 0.0:
        raise argparse.ArgumentTypeError("range step must be > 0")
    if start > stop:
        raise argparse.ArgumentTypeError("range must have min <= max")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _fmt(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class _Writer:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream
        self._csv = csv.writer(stream, lineterminator="\n") if fmt == "csv" else None
        self._header = None

    def rows(self, header, rows):
        if self.fmt == "csv":
            self._csv.writerow(header)
            for row in rows:
                self._csv.writerow([_fmt(v) for v in row])
        else:
            for row in rows:
                obj = {"schema_version": SCHEMA_VERSION}
                obj.update({k: _json_safe(v) for k, v in zip(header, row)})
                self.stream.write(json.dumps(obj) + "\n")

    def obj(self, mapping):
        out = {"schema_version": SCHEMA_VERSION}
        out.update({k: _json_safe(v) for k, v in mapping.items()})
        self.stream.write(json.dumps(out) + "\n")


def _add_common(sub, formats=True):
    if formats:
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="write to this path instead of stdout")
    sub.add_argument("--threads", type=int, default=None, help="worker threads (results identical for any value)")
    sub.add_argument("--cap", type=int, default=None, help="enumeration cap override (default 34 or FAREYCHAIN_ENUM_CAP)")


def _mean_field_args(sub):
    sub.add_argument("--a", type=float, default=-0.1)
    sub.add_argument("--b", type=float, default=1.0)
    sub.add_argument("--u", type=float, default=0.5)
    sub.add_argument("--g", type=float, default=1.0)
    sub.add_argument("--x", type=float, default=1.0)
    sub.add_argument("--t0", type=float, default=1.0)
    sub.add_argument("--h0", type=float, default=1.0)
    sub.add_argument("--d", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fareychain",
        description="Exact Farey-fraction spin-chain thermodynamics, KDP comparison models and RG predictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thermo", help="thermodynamic scan at fixed N")
    p.add_argument("--n", type=int, required=True)
    gb = p.add_mutually_exclusive_group(required=True)
    gb.add_argument("--beta", type=float)
    gb.add_argument("--beta-range", type=_parse_range)
    gh = p.add_mutually_exclusive_group()
    gh.add_argument("--h", type=float)
    gh.add_argument("--h-range", type=_parse_range)
    _add_common(p)

    p = sub.add_parser("phase-diagram", help="phase boundary data per model")
    p.add_argument("--model", choices=("ffsc-rg", "kdp-endpoint", "kdp-site"), required=True)
    p.add_argument("--t-range", type=_parse_range, required=True)
    p.add_argument("--epsilon", type=float, default=1.0, help="KDP bond energy")
    _mean_field_args(p)
    _add_common(p)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("suite", choices=suites.SUITE_NAMES + ("all",))
    p.add_argument("--n-max", type=int, default=None)
    _add_common(p, formats=False)

    p = sub.add_parser("extrapolate", help="thermodynamic-limit extrapolation of f_N")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=24)
    _add_common(p, formats=False)

    p = sub.add_parser("fss", help="finite-size-scaling fit of ln Z_N at beta = beta_c, h = 0")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=24)
    _add_common(p, formats=False)

    p = sub.add_parser("moments", help="Farey-difference moment sums")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--scaling-report", action="store_true")
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--orders", default="2,3,4")
    _add_common(p, formats=False)

    p = sub.add_parser("bench", help="compare the numba and numpy kernel backends")
    p.add_argument("--n", type=int, default=22)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--output", default=None)

    return parser


def _cmd_thermo(args, writer):
    betas = args.beta_range if args.beta_range is not None else [args.beta]
    if args.h_range is not None:
        hs = args.h_range
    else:
        hs = [args.h if args.h is not None else 0.0]
    header = ["n", "beta", "t", "h", "f", "u", "m", "s", "chi"]
    rows = []
    for beta in betas:
        for h in hs:
            point = thermo_point(EnsembleParams(args.n, beta, h), cap=args.cap)
            t_red = BETA_C / beta - 1.0 if beta > 0 else math.inf
            rows.append([args.n, beta, t_red, h, point.f, point.u, point.m, point.s, point.chi])
    writer.rows(header, rows)
    return 0


def _cmd_phase_diagram(args, writer):
    ts = args.t_range
    if args.model == "ffsc-rg":
        mf = rg.MeanFieldConstants(a=args.a, b=args.b, u=args.u, g=args.g)
        rgc = rg.RGConstants.from_dimension(d=args.d, x=args.x, t0=args.t0, h0=args.h0)
        header = ["t", "h_star", "h_star_asymptote", "delta_m", "delta_s", "status"]
        rows = []
        for t in ts:
            try:
                b = rg.phase_boundary_ffsc(t, mf, rgc)
                dm, ds = rg.discontinuities_ffsc(t, mf, rgc)
                status = "degenerate" if b.degenerate else "ok"
                rows.append([t, b.h_star, b.asymptote, dm, ds, status])
            except NoRealRootError:
                rows.append([t, None, None, None, None, "no-real-root"])
            except ValueError as exc:
                rows.append([t, None, None, None, None, f"error: {exc}"])
        writer.rows(header, rows)
        return 0
    variant = KdpVariant.ENDPOINT_FIELD if args.model == "kdp-endpoint" else KdpVariant.SITE_FIELD
    params = KdpParams(args.epsilon, variant)
    header = ["t", "h_star", "delta_m", "delta_s", "status"]
    rows = []
    for t in ts:
        try:
            h_star = kdp_phase_boundary(t, params)
            dm, ds = kdp_discontinuities(t, params)
            rows.append([t, h_star, dm, ds, "ok"])
        except NoRealRootError:
            rows.append([t, None, None, None, "no-real-root"])
    writer.rows(header, rows)
    return 0


def _cmd_verify(args, stream):
    names = suites.SUITE_NAMES if args.suite == "all" else (args.suite,)
    all_ok = True
    for name in names:
        lines, ok = suites.run_suite(name, n_max=args.n_max, cap=args.cap)
        stream.write(f"== suite {name} ==\n")
        for line in lines:
            stream.write(line + "\n")
        all_ok = all_ok and ok
    stream.write("ALL PASS\n" if all_ok else "FAILURES PRESENT\n")
    return 0 if all_ok else 1


def _cmd_extrapolate(args, writer):
    seq = free_energy_sequence(args.n_max, args.beta, args.h, n_min=args.n_min, cap=args.cap)
    f_inf, c1 = extrapolate_f(seq)
    writer.obj(
        {
            "command": "extrapolate",
            "beta": args.beta,
            "h": args.h,
            "n_min": args.n_min,
            "n_max": args.n_max,
            "f_infinity": f_inf,
            "c1": c1,
        }
    )
    return 0


def _cmd_fss(args, writer):
    data = []
    for n in range(args.n_min, args.n_max + 1):
        data.append((n, log_partition(EnsembleParams(n, BETA_C, 0.0), cap=args.cap).log_z))
    fit = fss_fit(data)
    writer.obj(
        {
            "command": "fss",
            "beta": BETA_C,
            "n_min": args.n_min,
            "n_max": args.n_max,
            "exponent_p": fit.exponent_p,
            "amplitude": fit.amplitude,
            "residual": fit.residual,
            "n_points": fit.n_points,
        }
    )
    return 0


def _cmd_moments(args, writer, parser):
    if args.scaling_report:
        orders = tuple(int(tok) for tok in args.orders.split(",") if tok)
        for row in moment_scaling_report(args.n_max, orders):
            writer.obj(
                {
                    "command": "moments-scaling",
                    "order": row.order,
                    "power_level": row.power_level,
                    "power_fractions": row.power_fractions,
                    "loglog_gain": row.loglog_gain,
                    "n_levels": row.n_levels,
                }
            )
        return 0
    if args.level is None or args.m is None:
        parser.error("moments needs --level and --m (or --scaling-report)")
    res = farey_moments(args.level, args.m)
    writer.obj({"command": "moments", "level": res.level, "order": res.order, "sum": res.sum})
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if getattr(args, "threads", None):
        backend.set_threads(args.threads)

    out = io.StringIO()
    writer = _Writer(getattr(args, "format", "json"), out)
    try:
        if args.command == "thermo":
            code = _cmd_thermo(args, writer)
        elif args.command == "phase-diagram":
            code = _cmd_phase_diagram(args, writer)
        elif args.command == "verify":
            code = _cmd_verify(args, out)
        elif args.command == "extrapolate":
            code = _cmd_extrapolate(args, writer)
        elif args.command == "fss":
            code = _cmd_fss(args, writer)
        elif args.command == "moments":
            code = _cmd_moments(args, writer, parser)
        elif args.command == "bench":
            for line in bench.run_bench(n=args.n, repeat=args.repeat):
                out.write(line + "\n")
            code = 0
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except (EnumerationCapExceededError, ExactIntegerOverflowError) as exc:
        print(f"fareychain: {exc}", file=sys.stderr)
        return 3

    text = out.getvalue()
    if getattr(args, "output", None):
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
