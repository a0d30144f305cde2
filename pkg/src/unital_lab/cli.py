"""``unital-lab``: parameter sweeps, per-theorem verification, pedal and orbit
reports, and open-problem scanners.

    unital-lab <verify|pedal|census|orbit|scan>
        --p P --n N [--w W] [--alpha A] [--beta B] [--lambda {1,w}]
        [--point X,Y,Z] [--problem NAME] [--format json|csv]
        [--out PATH] [--jobs K]

Element syntax: GF(q) values are decimal codes, GF(q^2) values ``A+e*B``.
Every long flag can be defaulted through an environment variable prefixed
``UNITAL_LAB_`` (for example ``UNITAL_LAB_JOBS=4``); explicit flags win.

Reports are deterministic: records are emitted in canonical parameter order
and carry no timings (those go to stderr), so a sweep produces byte-identical
output regardless of the worker count.  Exit status: 0 when all checks pass,
2 when any structural or theorem check fails, 1 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import multiprocessing as mp
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .elations import ElationGroup, orbit_incidence_stats, orbit_line_census, orbit_of_pedal, partition_lines_for_orbit
from .errors import (
    InternalConsistencyError,
    InvalidUnitalParameters,
    ParameterError,
    StructuralViolation,
    TheoremViolation,
)
from .fields import build_field_ctx
from .pedals import (
    arc_in_conic,
    canonical_base_point,
    feet_closed_form,
    feet_of,
    is_single_arc,
    line_pedal_census,
    secant_partition,
    trace_classes,
    two_arc_partition,
    _census_of_point_set,
)
from .plane import LineId, PointId, ProjectivePlane
from .unitals import UnitalModel, build_obm_unital, valid_parameter_pairs, validate_params

ENV_PREFIX = "UNITAL_LAB_"
PROBLEMS = ("four-lines", "conics", "orbit-census", "secant-partition", "incidence-structure")
# Sweep caps: exhaustive external-point work only at desk scale.
FULL_POINT_SWEEP_MAX_Q = 5
SECANT_SAMPLE = 200


@dataclass
class RunConfig:
    command: str
    p: int
    n: int
    w: int | None
    alpha: str | None
    beta: str | None
    lam: str | None
    point: str | None
    problem: str | None
    fmt: str
    out: str | None
    jobs: int


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _env(name: str, fallback=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def _build_parser() -> _Parser:
    parser = _Parser(prog="unital-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("verify", "build every requested unital and run the structural checks"),
        ("pedal", "feet, census, trace classes and arcs for one external point"),
        ("census", "line-pedal intersection census for one external point"),
        ("orbit", "elation orbit of a canonical pedal, partition lines, census"),
        ("scan", "open-problem scanners over all valid parameter pairs"),
    ):
        cmd = sub.add_parser(name, help=blurb)
        cmd.add_argument("--p", type=int, default=_env("p"), help="odd prime")
        cmd.add_argument("--n", type=int, default=_env("n", "1"), help="tower degree, q = p^n")
        cmd.add_argument("--w", type=int, default=_env("w"), help="non-square override for GF(q)")
        cmd.add_argument("--alpha", default=_env("alpha"), help="GF(q^2) element A+e*B")
        cmd.add_argument("--beta", default=_env("beta"), help="GF(q^2) element A+e*B")
        cmd.add_argument(
            "--lambda", dest="lam", choices=("1", "w"), default=_env("lambda"),
            help="canonical base point [0, lambda*e, 1]",
        )
        cmd.add_argument("--point", default=_env("point"), help="base point X,Y,Z")
        cmd.add_argument("--problem", choices=PROBLEMS, default=_env("problem"))
        cmd.add_argument(
            "--format", dest="fmt", choices=("json", "csv"), default=_env("format", "json")
        )
        cmd.add_argument("--out", default=_env("out"), help="output path (default stdout)")
        cmd.add_argument("--jobs", type=int, default=int(_env("jobs", "1")), help="worker count")
    return parser


def _config_from_args(args) -> RunConfig:
    if args.p is None:
        raise ParameterError("--p is required")
    return RunConfig(
        command=args.command,
        p=int(args.p),
        n=int(args.n),
        w=None if args.w is None else int(args.w),
        alpha=args.alpha,
        beta=args.beta,
        lam=args.lam,
        point=args.point,
        problem=args.problem,
        fmt=args.fmt,
        out=args.out,
        jobs=max(1, int(args.jobs)),
    )


# -- shared machinery -------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(p: int, n: int, w: int | None) -> None:
    ctx = build_field_ctx(p, n, w)
    plane = ProjectivePlane(ctx)
    plane.incidence  # build once per worker
    _WORKER["ctx"] = ctx
    _WORKER["plane"] = plane


def _run_chunked(config: RunConfig, items: list, chunk_fn) -> list:
    """Run chunk_fn over item chunks, in-process or in a pool, and merge the
    (key, record) results in canonical key order."""
    if config.jobs == 1 or len(items) <= 1:
        if "ctx" not in _WORKER or _WORKER["ctx"].p != config.p or _WORKER["ctx"].n != config.n:
            _init_worker(config.p, config.n, config.w)
        keyed = chunk_fn(items)
    else:
        chunk = max(1, len(items) // (config.jobs * 4))
        chunks = [items[i : i + chunk] for i in range(0, len(items), chunk)]
        with mp.get_context("fork").Pool(
            config.jobs, initializer=_init_worker, initargs=(config.p, config.n, config.w)
        ) as pool:
            keyed = [rec for part in pool.map(chunk_fn, chunks) for rec in part]
    keyed.sort(key=lambda kr: kr[0])
    return [rec for _, rec in keyed]


def _pair_list(ctx, config: RunConfig) -> list[tuple[int, int]]:
    if config.alpha is not None and config.beta is not None:
        return [(ctx.parse_fq2(config.alpha), ctx.parse_fq2(config.beta))]
    alphas = [ctx.parse_fq2(config.alpha)] if config.alpha is not None else range(ctx.q2)
    betas = [ctx.parse_fq2(config.beta)] if config.beta is not None else range(ctx.q2)
    return [(a, b) for a in alphas for b in betas]


def _model_for(ctx, plane, alpha: int, beta: int) -> UnitalModel:
    return build_obm_unital(ctx, plane, validate_params(ctx, alpha, beta))


def _record_base(ctx, alpha: int, beta: int) -> dict:
    return {
        "tool_version": __version__,
        "p": ctx.p,
        "n": ctx.n,
        "w": ctx.w,
        "alpha": ctx.format_fq2(alpha),
        "beta": ctx.format_fq2(beta),
    }


# -- verify ----------------------------------------------------------------------


def _verify_chunk(pairs) -> list:
    ctx, plane = _WORKER["ctx"], _WORKER["plane"]
    out = []
    for alpha, beta in pairs:
        rec = _record_base(ctx, alpha, beta)
        try:
            params = validate_params(ctx, alpha, beta)
        except InvalidUnitalParameters as exc:
            rec.update(
                status="skipped: invalid (discriminant square)",
                discriminant=exc.discriminant,
            )
            out.append(((alpha, beta), rec))
            continue
        model = build_obm_unital(ctx, plane, params)
        rec.update(model.record())
        checks = {}
        checks["size"] = model.size == ctx.q**3 + 1
        try:
            hist = model.verify_unital_axiom()
            checks["unital_axiom"] = True
            rec["tangent_lines"] = hist.get(1, 0)
            rec["secant_lines"] = hist.get(ctx.q + 1, 0)
        except StructuralViolation:
            checks["unital_axiom"] = False
        blocking = model.verify_minimal_blocking_set()
        checks["blocking"] = blocking.blocking
        checks["minimal"] = blocking.minimal
        checks["attains_bound"] = blocking.attains_bound
        pts, formula = model.tangent_lines_closed_form()
        rows = plane.incidence[pts]
        flags = model.line_counts[rows] == 1
        ok = bool(np.all(flags.sum(axis=1) == 1))
        if ok:
            oracle = rows[flags]
            ok = bool(np.array_equal(oracle, formula))
        checks["tangent_formula_matches_oracle"] = ok
        rec["checks"] = checks
        rec["status"] = "pass" if all(checks.values()) else "fail"
        out.append(((alpha, beta), rec))
    return out


def cmd_verify(config: RunConfig) -> tuple[dict, int]:
    ctx = build_field_ctx(config.p, config.n, config.w)
    pairs = _pair_list(ctx, config)
    records = _run_chunked(config, pairs, _verify_chunk)
    summary = {
        "pass": sum(1 for r in records if r.get("status") == "pass"),
        "fail": sum(1 for r in records if r.get("status") == "fail"),
        "skipped": sum(1 for r in records if str(r.get("status")).startswith("skipped")),
    }
    report = _report_envelope("verify", ctx, config, records, summary)
    return report, (2 if summary["fail"] else 0)


# -- pedal / census / orbit --------------------------------------------------------


def _single_tuple(config: RunConfig):
    if config.alpha is None or config.beta is None:
        raise ParameterError(f"{config.command} requires --alpha and --beta")
    ctx = build_field_ctx(config.p, config.n, config.w)
    plane = ProjectivePlane(ctx)
    alpha, beta = ctx.parse_fq2(config.alpha), ctx.parse_fq2(config.beta)
    model = _model_for(ctx, plane, alpha, beta)
    return ctx, plane, model


def _resolve_base(ctx, plane, model, config: RunConfig):
    """(base point id, lam or None) from --lambda / --point."""
    if config.lam is not None:
        lam = 1 if config.lam == "1" else ctx.w
        return canonical_base_point(model, lam), lam
    if config.point is None:
        raise ParameterError(f"{config.command} requires --lambda or --point")
    base = plane.parse_point(config.point)
    if base in model:
        raise ParameterError(
            f"point {plane.format_point(base)} lies on the unital; pedals are "
            "defined for external points"
        )
    lam = None
    # a --point naming the canonical base still gets the closed-form frame
    for cand in (1, ctx.w):
        if base == canonical_base_point(model, cand):
            lam = cand
    return base, lam


def _pedal_payload(ctx, plane, model, base, lam, census_wanted=True) -> dict:
    rec: dict = {"base_point": plane.format_point(base)}
    brute = feet_of(model, base)
    rec["feet"] = [plane.format_point(PointId(f)) for f in brute.feet]
    rec["collinear"] = brute.collinear
    pedal = brute
    if lam is not None and not model.params.classical:
        closed = feet_closed_form(model, lam)
        if closed.feet != brute.feet:
            raise InternalConsistencyError("closed-form feet differ from brute-force feet")
        pedal = closed
        rec["lambda"] = "1" if lam == 1 else "w"
        rec["foot_params"] = [ctx.format_fq2(x) for x in closed.foot_params]
        rec["trace_classes"] = {
            str(t): [ctx.format_fq2(x) for x in cls]
            for t, cls in trace_classes(model, lam).items()
        }
    off_linf = not plane.incident(base, plane.infinity_line)
    if census_wanted and off_linf and not model.params.classical:
        census = line_pedal_census(model, pedal)
        rec["census"] = census.as_json_dict(plane)
        parts = two_arc_partition(model, pedal)
        rec["arc_report"] = {
            "parts": [len(parts[0]), len(parts[1])],
            "arc_checks": True,  # two_arc_partition would have raised otherwise
            "single_arc": is_single_arc(model, pedal),
            "conic_fit": [
                (fit.contained if fit.status == "ok" else fit.status)
                for fit in (arc_in_conic(plane, part) for part in parts if part)
            ],
        }
    return rec


def cmd_pedal(config: RunConfig) -> tuple[dict, int]:
    ctx, plane, model = _single_tuple(config)
    base, lam = _resolve_base(ctx, plane, model, config)
    rec = _record_base(ctx, model.params.alpha, model.params.beta)
    rec.update(_pedal_payload(ctx, plane, model, base, lam))
    report = _report_envelope("pedal", ctx, config, [rec], {"pass": 1, "fail": 0, "skipped": 0})
    return report, 0


def cmd_census(config: RunConfig) -> tuple[dict, int]:
    ctx, plane, model = _single_tuple(config)
    base, lam = _resolve_base(ctx, plane, model, config)
    pedal = feet_closed_form(model, lam) if lam is not None else feet_of(model, base)
    census = line_pedal_census(model, pedal)
    rec = _record_base(ctx, model.params.alpha, model.params.beta)
    rec.update(census.as_json_dict(plane, base=base))
    report = _report_envelope("census", ctx, config, [rec], {"pass": 1, "fail": 0, "skipped": 0})
    return report, 0


def cmd_orbit(config: RunConfig) -> tuple[dict, int]:
    ctx, plane, model = _single_tuple(config)
    if config.lam is None:
        raise ParameterError("orbit requires --lambda (canonical frame)")
    lam = 1 if config.lam == "1" else ctx.w
    pedal = feet_closed_form(model, lam)
    orbit = orbit_of_pedal(model, pedal)
    lines = partition_lines_for_orbit(model, orbit)
    census = orbit_line_census(model, orbit)
    rec = _record_base(ctx, model.params.alpha, model.params.beta)
    rec.update(
        {
            "lambda": config.lam,
            "pedals": [
                {"t": t, "feet": [plane.format_point(PointId(f)) for f in feet]}
                for t, feet in orbit.pedals
            ],
            "partition_lines": [plane.format_line(l) for l in lines],
            "census_histogram": {str(s): c for s, c in sorted(census.histogram.items())},
            "incidence_stats": orbit_incidence_stats(model, orbit),
        }
    )
    report = _report_envelope("orbit", ctx, config, [rec], {"pass": 1, "fail": 0, "skipped": 0})
    return report, 0


# -- scan -------------------------------------------------------------------------


def _scan_bases(model) -> np.ndarray:
    """Base points for pedal scans: every external point off the line at
    infinity at desk scale, otherwise the canonical bases and their elation
    translates."""
    ctx, plane = model.ctx, model.plane
    if ctx.q <= FULL_POINT_SWEEP_MAX_Q:
        on_linf = np.zeros(plane.size, dtype=bool)
        on_linf[plane.points_on(plane.infinity_line)] = True
        all_ids = np.arange(plane.size, dtype=np.int32)
        return all_ids[~model.mask & ~on_linf]
    group = ElationGroup(model)
    bases = [
        group.apply_point(t, canonical_base_point(model, lam))
        for lam in (1, ctx.w)
        for t in group.elements()
    ]
    return np.unique(np.asarray(bases, dtype=np.int32))


def _scan_chunk(problem: str, tuples) -> list:
    ctx, plane = _WORKER["ctx"], _WORKER["plane"]
    out = []
    for alpha, beta in tuples:
        model = _model_for(ctx, plane, alpha, beta)
        rec = _record_base(ctx, alpha, beta)
        rec["beta_real"] = model.params.beta_real
        if problem == "four-lines":
            bases = _scan_bases(model)
            max_size = 0
            lam_hists = []
            for lam in (1, ctx.w):
                census = line_pedal_census(model, feet_closed_form(model, lam))
                lam_hists.append(census.histogram)
                max_size = max(max_size, census.max_size())
            in_set = np.zeros(plane.size, dtype=bool)
            for base in bases:
                pedal = feet_of(model, PointId(int(base)))
                in_set[:] = False
                in_set[np.asarray(pedal.feet, dtype=np.int32)] = True
                counts = np.bincount(plane.incidence[np.asarray(pedal.feet)].ravel())
                max_size = max(max_size, int(counts.max()))
            rec.update(
                scanned_bases=int(bases.size),
                max_line_size=max_size,
                size4_lines_exist=max_size >= 4,
                lambda_censuses_equal=lam_hists[0] == lam_hists[1],
            )
            out.append(((alpha, beta, 0), rec))
        elif problem == "conics":
            for lam_label, lam in (("1", 1), ("w", ctx.w)):
                pedal = feet_closed_form(model, lam)
                parts = two_arc_partition(model, pedal)
                fits = [
                    (fit.contained if fit.status == "ok" else fit.status)
                    for fit in (arc_in_conic(plane, part) for part in parts if part)
                ]
                r = dict(rec)
                r.update(
                    {
                        "lambda": lam_label,
                        "parts": [len(parts[0]), len(parts[1])],
                        "arc_checks": True,
                        "single_arc": is_single_arc(model, pedal),
                        "conic_fit": fits,
                    }
                )
                out.append(((alpha, beta, lam), r))
        elif problem == "orbit-census":
            for lam_label, lam in (("1", 1), ("w", ctx.w)):
                orbit = orbit_of_pedal(model, feet_closed_form(model, lam))
                partition_lines_for_orbit(model, orbit)
                census = orbit_line_census(model, orbit)
                r = dict(rec)
                r.update(
                    {
                        "lambda": lam_label,
                        "census_histogram": {str(s): c for s, c in sorted(census.histogram.items())},
                    }
                )
                out.append(((alpha, beta, lam), r))
        elif problem == "secant-partition":
            secants = np.nonzero(model.line_counts == ctx.q + 1)[0]
            if secants.size > SECANT_SAMPLE and ctx.q > FULL_POINT_SWEEP_MAX_Q:
                step = secants.size // SECANT_SAMPLE
                secants = secants[::step][:SECANT_SAMPLE]
            witness = None
            for lid in secants:
                pairs = secant_partition(model, LineId(int(lid)))
                if witness is None:
                    witness = {
                        "line": plane.format_line(LineId(int(lid))),
                        "pairs": [
                            [plane.format_point(b), plane.format_point(f)] for b, f in pairs
                        ],
                    }
            rec.update(
                secants_checked=int(secants.size), all_partitioned=True, witness=witness
            )
            out.append(((alpha, beta, 0), rec))
        elif problem == "incidence-structure":
            for lam_label, lam in (("1", 1), ("w", ctx.w)):
                orbit = orbit_of_pedal(model, feet_closed_form(model, lam))
                r = dict(rec)
                r.update({"lambda": lam_label, **orbit_incidence_stats(model, orbit)})
                out.append(((alpha, beta, lam), r))
    return out


def cmd_scan(config: RunConfig) -> tuple[dict, int]:
    if config.problem is None:
        raise ParameterError("scan requires --problem")
    ctx = build_field_ctx(config.p, config.n, config.w)
    tuples = [
        (t.alpha, t.beta) for t in valid_parameter_pairs(ctx, nonclassical_only=True)
    ]
    if config.alpha is not None:
        a = ctx.parse_fq2(config.alpha)
        tuples = [t for t in tuples if t[0] == a]
    if config.beta is not None:
        b = ctx.parse_fq2(config.beta)
        tuples = [t for t in tuples if t[1] == b]
    records = _run_chunked(config, tuples, functools.partial(_scan_chunk, config.problem))
    summary = {"pass": len(records), "fail": 0, "skipped": 0, "tuples": len(tuples)}
    report = _report_envelope(f"scan:{config.problem}", ctx, config, records, summary)
    return report, 0


# -- emission ----------------------------------------------------------------------


def _report_envelope(command: str, ctx, config: RunConfig, records, summary) -> dict:
    return {
        "tool": {"name": "unital-lab", "version": __version__},
        "command": command,
        "config": {
            "p": ctx.p,
            "n": ctx.n,
            "w": ctx.w,
            "q": ctx.q,
            "alpha": config.alpha,
            "beta": config.beta,
            "lambda": config.lam,
            "point": config.point,
            "problem": config.problem,
        },
        "records": records,
        "summary": summary,
    }


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, prefix=f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(value, sort_keys=True)
        else:
            flat[name] = value
    return flat


def render_report(report: dict, fmt: str) -> str:
    """JSON is the source of truth; CSV is a flattened projection of records."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    rows = [_flatten(rec) for rec in report["records"]]
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=sorted(header), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _emit(report: dict, config: RunConfig) -> None:
    text = render_report(report, config.fmt)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "verify": cmd_verify,
    "pedal": cmd_pedal,
    "census": cmd_census,
    "orbit": cmd_orbit,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        config = _config_from_args(args)
        report, code = _COMMANDS[config.command](config)
        _emit(report, config)
    except (ParameterError, InvalidUnitalParameters, ValueError) as exc:
        sys.stderr.write(f"unital-lab: error: {exc}\n")
        return 1
    except (TheoremViolation, StructuralViolation, InternalConsistencyError) as exc:
        sys.stderr.write(f"unital-lab: check failed: {exc}\n")
        return 2
    sys.stderr.write(
        f"# unital-lab {config.command} finished in {time.perf_counter() - started:.2f}s\n"
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
