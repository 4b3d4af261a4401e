"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import coloring as col
from .diagram import LinkDiagram, load_diagram
from .errors import InputError, NumericalError, OptlimitError, UnverifiedSolutionError
from .moves import parse_move_plan
from .potential import build_potential, evaluate
from .quandle import det2
from .transform import transport_sequence
from .volume import from_evaluation

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-9
    rng_seed: int = 0
    fmt: str = "text"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")


class Out:
    """Collects report lines in the chosen format."""

    def __init__(self, cfg: RunConfig, stream):
        self.cfg = cfg
        self.stream = stream

    def kv(self, key: str, *values, text: Optional[str] = None):
        if self.cfg.fmt == "kv":
            self.stream.write(f"{key}=" + " ".join(str(v) for v in values) + "\n")
        else:
            self.stream.write((text if text is not None else f"{key} " + " ".join(str(v) for v in values)) + "\n")

    def raw(self, text: str):
        self.stream.write(text if text.endswith("\n") else text + "\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _f(x: float) -> str:
    return f"{x:.17g}"


def _b(x: bool) -> str:
    return "true" if x else "false"


def _load_solution(d: LinkDiagram, path: str, tol: float) -> tuple[col.SolutionVector, col.ColorFile]:
    cf = col.parse_color_file(_read(path))
    if cf.solution:
        vals = dict(sorted(cf.solution.items()))
    elif cf.regions and cf.p is not None and len(cf.regions) > 1:
        vals = {k: det2(cf.p, s) for k, s in sorted(cf.regions.items())}
    else:
        raise InputError(f"{path}: no solution section (and no full region coloring with p)")
    missing = sorted(set(d.region_ids) - set(vals))
    extra = sorted(set(vals) - set(d.region_ids))
    if missing or extra:
        raise InputError(f"{path}: solution regions do not match the diagram (missing {missing}, extra {extra})")
    return col.SolutionVector(vals, col.is_essential(vals, d.adjacent_pairs, tol)), cf


def cmd_parse(args, cfg: RunConfig, out: Out) -> int:
    d = load_diagram(_read(args.diagram))
    out.kv("seed", cfg.rng_seed)
    out.kv("crossings", len(d.crossings))
    out.kv("edges", len(d.ports_of))
    out.kv("components", d.component_count)
    out.kv("regions", len(d.regions))
    for c in d.crossings:
        slots = d.slot_regions(c.id)
        s = "+" if c.sign > 0 else "-"
        out.kv(f"crossing.{c.id}", f"sign={s}", *(f"{k}={r}" for k, r in zip("abcd", slots)),
               text=f"crossing {c.id} {s} slots " + " ".join(f"{k}={r}" for k, r in zip("abcd", slots)))
    for rid, corners in d.regions.items():
        cs = [f"{cid}:{'abcd'[d.by_id[cid].corner_slot(k)]}" for cid, k in corners]
        out.kv(f"region.{rid}", *cs, text=f"region {rid} corners " + " ".join(cs))
    return EXIT_OK


def cmd_solve(args, cfg: RunConfig, out: Out) -> int:
    d = load_diagram(_read(args.diagram))
    cf = col.parse_color_file(_read(args.colors))
    if not cf.arcs:
        raise InputError(f"{args.colors}: no arcs section")
    arcs = col.complete_arc_colors(d, cf.arcs)
    if cf.seed_region is not None and cf.p is not None:
        if cf.seed_region not in cf.regions:
            raise InputError(f"{args.colors}: seed_region {cf.seed_region} has no color")
        sc = col.shadow_coloring(d, arcs, cf.seed_region, cf.regions[cf.seed_region], cf.p, cfg.tolerance)
        chosen = "given"
    else:
        plan = parse_move_plan(_read(args.plan)) if args.plan else None
        sc = col.select_generic(d, arcs, plan, cfg.rng_seed, budget=args.budget, tol=cfg.tolerance)
        chosen = "sampled"
    w = col.construct_solution(sc)
    ev = evaluate(build_potential(d), w.values)
    doc = col.format_color_file(sc.arc_colors, sc.region_colors, sc.p, sc.seed_region, cfg.rng_seed, w.values)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(doc)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        out.raw(doc)
    generic = col.generic_ok(d, sc, cfg.tolerance)
    sep = "=" if cfg.fmt == "kv" else " "
    for key, val in (("coloring", chosen), ("generic", _b(generic)), ("essential", _b(w.essential)),
                     ("max-residual", f"{ev.residual_max:.3g}")):
        out.raw(f"# {key}{sep}{val}")
    if ev.residual_max >= cfg.tolerance:
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, out: Out) -> int:
    d = load_diagram(_read(args.diagram))
    w, _ = _load_solution(d, args.solution, cfg.tolerance)
    ev = evaluate(build_potential(d), w.values)
    out.kv("seed", cfg.rng_seed)
    for k, r in ev.residuals.items():
        out.kv(f"region.{k}.residual", f"{r:.3g}", text=f"region {k}: residual {r:.3g}")
    out.kv("max-residual", f"{ev.residual_max:.3g}")
    out.kv("essential", _b(w.essential))
    return EXIT_OK if ev.residual_max < cfg.tolerance else EXIT_NUMERICAL


def cmd_volume(args, cfg: RunConfig, out: Out) -> int:
    d = load_diagram(_read(args.diagram))
    w, _ = _load_solution(d, args.solution, cfg.tolerance)
    cv = from_evaluation(evaluate(build_potential(d), w.values), cfg.tolerance)
    out.kv("seed", cfg.rng_seed)
    if cfg.fmt == "kv":
        out.raw(f"vol={_f(cv.vol)}\ncs={_f(cv.cs)}\nW0={_f(cv.W0.real)} {_f(cv.W0.imag)}\n"
                f"verified={_b(cv.verified)}\nmax-residual={cv.residual_max:.3g}")
    else:
        out.raw(cv.to_text())
    if not cv.verified:
        raise UnverifiedSolutionError(f"max residual {cv.residual_max:.3g} is not below {cfg.tolerance:g}")
    return EXIT_OK


def cmd_move(args, cfg: RunConfig, out: Out) -> int:
    d = load_diagram(_read(args.diagram))
    w, cf = _load_solution(d, args.solution, cfg.tolerance)
    plan = parse_move_plan(_read(args.plan))
    records, d2, w2 = transport_sequence(d, w, plan, cfg.tolerance)
    out.kv("seed", cfg.rng_seed)
    ev0 = evaluate(build_potential(d), w.values)
    out.kv("step.0.W0", _f(ev0.W0_value.real), _f(ev0.W0_value.imag),
           text=f"step 0: input\n  W0 {_f(ev0.W0_value.real)} {_f(ev0.W0_value.imag)}")
    for r in records:
        if cfg.fmt == "kv":
            out.raw(f"step.{r.step}.move={r.move.to_text()}")
            for k, v in r.created_values.items():
                out.raw(f"step.{r.step}.created.{k}={_f(v.real)} {_f(v.imag)}")
            out.raw(f"step.{r.step}.deleted=" + " ".join(map(str, r.deleted_regions)))
            out.raw(f"step.{r.step}.max-residual={r.residual_max:.3g}")
            out.raw(f"step.{r.step}.W0={_f(r.W0.real)} {_f(r.W0.imag)}")
        else:
            out.raw(r.to_text())
    out.raw("--- diagram")
    out.raw(d2.to_text())
    out.raw("--- solution")
    out.raw(col.format_color_file(seed=cfg.rng_seed, solution=w2.values))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the options without defaults so they don't mask earlier ones
        g = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        g.add_argument("--tolerance", type=float, default=dflt(1e-9), help="residual tolerance (default 1e-9)")
        g.add_argument("--seed", type=int, default=dflt(0), help="random seed for sampled colorings")
        g.add_argument("--format", choices=("text", "kv"), default=dflt("text"), dest="fmt")
        return g

    common = options(False)
    p = _Parser(prog="optlimit", description="Optimistic-limit complex volume of link diagrams.",
                parents=[options(True)])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)
    sp = sub.add_parser("parse", parents=[common], help="parse a diagram and list its regions")
    sp.add_argument("diagram")
    sp.set_defaults(func=cmd_parse)
    sp = sub.add_parser("solve", parents=[common], help="build a shadow coloring and its solution")
    sp.add_argument("diagram")
    sp.add_argument("colors")
    sp.add_argument("-o", "--output")
    sp.add_argument("--plan", help="move plan the sampled coloring must stay generic along")
    sp.add_argument("--budget", type=int, default=64, help="sampling attempts (default 64)")
    sp.set_defaults(func=cmd_solve)
    sp = sub.add_parser("verify", parents=[common], help="residuals of the hyperbolicity equations")
    sp.add_argument("diagram")
    sp.add_argument("solution")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("volume", parents=[common], help="complex volume from W0")
    sp.add_argument("diagram")
    sp.add_argument("solution")
    sp.set_defaults(func=cmd_volume)
    sp = sub.add_parser("move", parents=[common], help="transport a solution along a move plan")
    sp.add_argument("diagram")
    sp.add_argument("solution")
    sp.add_argument("plan")
    sp.set_defaults(func=cmd_move)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.tolerance, args.seed, args.fmt)
        return args.func(args, cfg, Out(cfg, stdout))
    except UsageError as exc:
        stderr.write(f"optlimit: {exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        stderr.write(f"optlimit: error: {exc}\n")
        return EXIT_INPUT
    except NumericalError as exc:
        stderr.write(f"optlimit: numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except OptlimitError as exc:  # pragma: no cover - every subclass is handled above
        stderr.write(f"optlimit: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
