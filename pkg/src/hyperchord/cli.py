"""Command-line front end: distribution tables, figure data, sampling runs,
estimation experiments and dimension-analysis reports.

Every command is deterministic given its full flag set including the seed
(falling back to the HYPERCHORD_SEED environment variable), and every
emitted file carries the command, parameters, version and seed it was
produced from.  Exit codes: 0 success, 2 usage error, 3 internal
consistency failure (closed form and quadrature oracle disagree).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, charfun, geometry, inference, sampling, specfun
from .chord import ChordDistribution

GRID_EDGE_TOL = 1e-12
MAX_GRID_POINTS = 10_000_000
CHARFUN_CONSISTENCY_TOL = 1e-6


class UsageError(Exception):
    pass


def parse_grid(text: str) -> np.ndarray:
    """Parse 'lo:hi:step' into inclusive grid values.

    The upper endpoint is included when it lands within 1e-12 (relative to
    the grid scale) of an exact step multiple; landing values are clamped
    onto hi so downstream domain checks see the intended endpoint.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"non-numeric grid component in {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise UsageError(f"grid components must be finite, got {text!r}")
    if lo > hi:
        raise UsageError(f"grid lower end exceeds upper end in {text!r}")
    if lo == hi:
        return np.array([lo])
    if step <= 0.0:
        raise UsageError(f"grid step must be positive, got {text!r}")
    scale = max(1.0, abs(lo), abs(hi))
    count = int(math.floor((hi - lo) / step + GRID_EDGE_TOL)) + 1
    if count > MAX_GRID_POINTS:
        raise UsageError(f"grid of {count} points exceeds the {MAX_GRID_POINTS} limit")
    vals = lo + step * np.arange(count)
    vals[vals > hi] = hi
    if hi - vals[-1] <= GRID_EDGE_TOL * scale:
        vals[-1] = hi
    return vals


def parse_int_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"range must be lo:hi, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"non-integer range component in {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


@dataclass
class OutputEnvelope:
    """Tabular payload plus the provenance needed to reproduce it."""

    command: str
    parameters: dict
    columns: list[str]
    rows: list[tuple]
    summary: dict = field(default_factory=dict)
    seed: int | None = None

    def provenance(self) -> dict:
        prov = {"version": __version__}
        if self.seed is not None:
            prov["seed"] = self.seed
        return prov

    def write_csv(self, out) -> None:
        out.write(f"# command: {self.command}\n")
        for key, value in self.provenance().items():
            out.write(f"# {key}: {fmt(value)}\n")
        for key, value in sorted(self.parameters.items()):
            out.write(f"# parameter {key}: {fmt(value)}\n")
        for key, value in sorted(self.summary.items()):
            out.write(f"# summary {key}: {fmt(value)}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(fmt(v) for v in row) + "\n")

    def write_json(self, out) -> None:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "provenance": self.provenance(),
            "summary": self.summary,
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        json.dump(payload, out, indent=2, sort_keys=True)
        out.write("\n")

    def write(self, out, fmt_name: str) -> None:
        if fmt_name == "csv":
            self.write_csv(out)
        else:
            self.write_json(out)


def _emit(envelope: OutputEnvelope, args) -> None:
    if args.output in (None, "-"):
        envelope.write(sys.stdout, args.format)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            envelope.write(fh, args.format)
        print(f"[hyperchord] wrote {len(envelope.rows)} rows to {args.output}", file=sys.stderr)


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("HYPERCHORD_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HYPERCHORD_SEED must be an integer, got {env!r}") from None
    return 0


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_dist(args) -> int:
    if args.n < 2:
        raise UsageError(f"dimension must be >= 2, got {args.n}")
    if not args.r > 0:
        raise UsageError(f"radius must be positive, got {args.r}")
    dist = ChordDistribution(args.n, args.r)
    grid = parse_grid(args.grid)
    if args.which == "pdf":
        columns, rows = ["x", "pdf"], [(x, dist.pdf(x)) for x in grid]
    elif args.which == "cdf":
        columns, rows = ["x", "cdf"], [(x, dist.cdf(x)) for x in grid]
    else:
        if grid[0] < 0.0 or grid[-1] > 1.0:
            raise UsageError("quantile grid must lie within [0, 1]")
        columns, rows = ["p", "quantile"], [(p, dist.quantile(p)) for p in grid]
    mode = dist.mode()
    envelope = OutputEnvelope(
        command="dist",
        parameters={"n": args.n, "r": args.r, "which": args.which, "grid": args.grid},
        columns=columns,
        rows=rows,
        summary={
            "mean": dist.mean(),
            "variance": dist.variance(),
            "median": dist.median(),
            "mode": mode.value,
            "mode_boundary": mode.boundary,
        },
    )
    _emit(envelope, args)
    return 0


def cmd_sample(args) -> int:
    if args.n < 2:
        raise UsageError(f"dimension must be >= 2, got {args.n}")
    if not args.r > 0:
        raise UsageError(f"radius must be positive, got {args.r}")
    if args.count < 1:
        raise UsageError(f"count must be >= 1, got {args.count}")
    seed = _resolve_seed(args)
    state = sampling.RngState(seed, args.stream_id)
    batch = sampling.sample_chords(args.n, args.r, args.count, state, args.sampler)
    summary = sampling.batch_summary(batch)
    se_band = 4.0 * summary["mean_se"]
    print(
        f"[hyperchord] sample n={args.n} r={args.r} sampler={args.sampler} count={args.count}: "
        f"mean {summary['empirical_mean']:.6g} vs analytic {summary['analytic_mean']:.6g} "
        f"(4-SE band +-{se_band:.3g}), median {summary['empirical_median']:.6g} vs "
        f"{summary['analytic_median']:.6g}, one-sample KS p-value {summary['ks_p_value']:.4g}",
        file=sys.stderr,
    )
    if args.format == "csv":
        # canonical batch serialization: provenance header, one value per line
        if args.output in (None, "-"):
            batch.to_csv(sys.stdout)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                batch.to_csv(fh)
            print(f"[hyperchord] wrote batch of {batch.count} to {args.output}", file=sys.stderr)
        return 0
    envelope = OutputEnvelope(
        command="sample",
        parameters={
            "n": args.n,
            "r": args.r,
            "count": args.count,
            "sampler": args.sampler,
            "stream_id": args.stream_id,
        },
        columns=["value"],
        rows=[(v,) for v in batch.values],
        summary=summary,
        seed=seed,
    )
    _emit(envelope, args)
    return 0


def cmd_estimate(args) -> int:
    if args.n < 2:
        raise UsageError(f"dimension must be >= 2, got {args.n}")
    if not args.r_true > 0:
        raise UsageError(f"true radius must be positive, got {args.r_true}")
    if args.sample_count < 1 or args.replications < 2:
        raise UsageError("need sample-count >= 1 and replications >= 2")
    seed = _resolve_seed(args)
    reports, summary = inference.replicate_estimates(
        args.n, args.r_true, args.sample_count, args.replications, seed, args.sampler
    )
    columns = ["replication", "r_hat", "var_closed_form", "crlb", "efficiency"]
    rows = [
        (idx, rep.r_hat, rep.var_closed_form, rep.crlb, rep.efficiency)
        for idx, rep in enumerate(reports)
    ]
    summary_dict = summary.to_dict()
    if args.n <= 4:
        summary_dict["crlb_note"] = "crlb unavailable: closed-form Fisher information requires n > 4"
    envelope = OutputEnvelope(
        command="estimate",
        parameters={
            "n": args.n,
            "r_true": args.r_true,
            "sample_count": args.sample_count,
            "replications": args.replications,
            "sampler": args.sampler,
        },
        columns=columns,
        rows=rows,
        summary=summary_dict,
        seed=seed,
    )
    _emit(envelope, args)
    return 0


def cmd_analyze(args) -> int:
    lo, hi = parse_int_range(args.range)
    if args.which == "gap":
        if lo < 2:
            raise UsageError(f"gap analysis requires dimensions >= 2, got {lo}")
        table = inference.gap_table(lo, hi)
        epsilon = args.epsilon if args.epsilon is not None else inference.default_saturation_epsilon()
        saturation = inference.detect_saturation(table, epsilon)
        envelope = OutputEnvelope(
            command="analyze",
            parameters={"which": "gap", "range": args.range, "epsilon": epsilon},
            columns=["n", "c_n", "gap"],
            rows=[(row.n, row.c_n, row.gap) for row in table],
            summary={
                "saturation_dimension": saturation if saturation is not None else "not reached",
                "epsilon": epsilon,
            },
        )
    elif args.which == "fisher":
        if lo < 5:
            raise UsageError(f"fisher analysis requires dimensions >= 5, got {lo}")
        rows = [(n, inference.fisher_closed(n, 1.0)) for n in range(lo, hi + 1)]
        argmin = inference.fisher_argmin()
        best = min(v for _, v in rows)
        envelope = OutputEnvelope(
            command="analyze",
            parameters={"which": "fisher", "range": args.range},
            columns=["n", "fisher_information_unit_radius"],
            rows=rows,
            summary={
                "continuous_argmin": argmin.continuous,
                "integer_argmins": " ".join(str(m) for m, v in rows if v == best),
                "minimum_value": best,
            },
        )
    else:  # volume
        if lo < 1:
            raise UsageError(f"volume analysis requires dimensions >= 1, got {lo}")
        vol_argmax, table = geometry.argmax_over(lo, hi, "volume")
        surf_argmax, _ = geometry.argmax_over(lo, hi, "surface_area")
        note = (
            f"volume argmax n={vol_argmax}, surface-area argmax n={surf_argmax}; "
            "the often-quoted maximum 'at dimension 7' matches the surface area "
            f"viewed as a function of the ambient dimension d = n+1 (d={surf_argmax + 1}), "
            "not the volume formula's integer argmax"
        )
        envelope = OutputEnvelope(
            command="analyze",
            parameters={"which": "volume", "range": args.range},
            columns=["n", "volume", "surface_area"],
            rows=[(row.n, row.volume, row.surface_area) for row in table],
            summary={
                "volume_argmax": vol_argmax,
                "surface_area_argmax": surf_argmax,
                "note": note,
            },
        )
    _emit(envelope, args)
    return 0


def cmd_charfun(args) -> int:
    if args.n < 2:
        raise UsageError(f"dimension must be >= 2, got {args.n}")
    if not args.r > 0:
        raise UsageError(f"radius must be positive, got {args.r}")
    grid = parse_grid(args.t)
    max_abs_t = max(abs(grid[0]), abs(grid[-1]))
    if max_abs_t * args.r > charfun.MAX_PHASE:
        raise UsageError(
            f"|t| r up to {max_abs_t * args.r:g} exceeds the supported range {charfun.MAX_PHASE:g}"
        )
    closed = charfun.has_closed_form(args.n)
    if closed and args.n == 3 and 2.0 * args.r * max_abs_t > specfun.MAX_STRUVE_ARG:
        raise UsageError(
            f"|2 r t| up to {2.0 * args.r * max_abs_t:g} exceeds the Struve range "
            f"{specfun.MAX_STRUVE_ARG:g} needed by the n=3 closed form"
        )
    rows = []
    max_dev = 0.0
    for t in grid:
        t = float(t)
        if closed:
            value = charfun.phi_closed(args.n, args.r, t)
            max_dev = max(max_dev, abs(value - charfun.phi_numeric(args.n, args.r, t)))
            source = "closed"
        else:
            value = charfun.phi_numeric(args.n, args.r, t)
            source = "quadrature"
        rows.append((t, value.real, value.imag, abs(value), source))
    summary = {"source": "closed+quadrature" if closed else "quadrature"}
    if closed:
        summary["max_abs_deviation"] = max_dev
    envelope = OutputEnvelope(
        command="charfun",
        parameters={"n": args.n, "r": args.r, "t": args.t},
        columns=["t", "re", "im", "abs", "source"],
        rows=rows,
        summary=summary,
    )
    _emit(envelope, args)
    if closed and max_dev > CHARFUN_CONSISTENCY_TOL:
        print(
            f"[hyperchord] consistency failure: closed form deviates from quadrature "
            f"by {max_dev:.3e} (> {CHARFUN_CONSISTENCY_TOL:g})",
            file=sys.stderr,
        )
        return 3
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperchord",
        description="Chord-length distribution on n-spheres: tables, samples, "
        "estimation experiments and dimension analyses.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default="-", help="output file, '-' for stdout")

    p = sub.add_parser("dist", help="evaluate pdf/cdf/quantile on a grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--which", choices=("pdf", "cdf", "quantile"), required=True)
    p.add_argument("--grid", required=True, help="lo:hi:step, inclusive endpoints")
    add_common(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("sample", help="draw a chord-length sample batch")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--sampler", choices=sampling.SAMPLER_KINDS, default="beta_transform")
    p.add_argument("--seed", type=int, default=None, help="defaults to HYPERCHORD_SEED or 0")
    p.add_argument("--stream-id", type=int, default=0, dest="stream_id")
    add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", help="replicated radius-estimation experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-true", type=float, required=True, dest="r_true")
    p.add_argument("--sample-count", type=int, required=True, dest="sample_count")
    p.add_argument("--replications", type=int, default=50)
    p.add_argument("--sampler", choices=sampling.SAMPLER_KINDS, default="beta_transform")
    p.add_argument("--seed", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("analyze", help="gap, fisher or volume tables over a dimension range")
    p.add_argument("--which", choices=("gap", "fisher", "volume"), required=True)
    p.add_argument("--range", required=True, help="lo:hi inclusive integer range")
    p.add_argument("--epsilon", type=float, default=None, help="gap flatness threshold")
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("charfun", help="characteristic function on a t grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--t", required=True, help="lo:hi:step frequency grid")
    add_common(p)
    p.set_defaults(func=cmd_charfun)

    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join grid flags with values that argparse would mistake for options
    (negative lower endpoints such as --t -20:20:0.1)."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--t", "--grid") and i + 1 < len(argv) and argv[i + 1].startswith("-") and ":" in argv[i + 1]:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"[hyperchord] error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"[hyperchord] error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
