"""Command-line interface.

Exit codes: 0 success / all suites pass, 1 a verification failed,
2 usage or malformed-input error, 3 input that parses but fails validation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .driver import betti_numbers, graded_betti
from .errors import CohomologyError, FieldError, GradingError, ParseError, ValidationError
from .fields import Field
from .grading import make_grading
from .io import dumps_report, parse_algebra_file, report_csv, report_text
from .lie import BUILTIN_NAMES, CartanTag, builtin_algebra, make_module
from . import suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

DEFAULT_PARAM = {"heisenberg": 1}


class UsageError(CohomologyError):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    file: str | None = None
    module: str | None = None
    field: str | None = None
    reduce: str = "none"
    max_n: int | None = None
    json: str | None = None
    csv: str | None = None
    format: str = "text"
    witness: bool = False
    suite: str | None = None
    N: int | None = None
    n: int | None = None

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and k not in ("json", "csv")}


def parse_builtin(spec: str) -> tuple[str, int]:
    name, _, param = spec.partition(":")
    name = name.replace("-", "_")
    if name not in BUILTIN_NAMES:
        raise UsageError(f"unknown algebra {spec!r}; choose from {', '.join(BUILTIN_NAMES)}")
    if param:
        try:
            return name, int(param)
        except ValueError:
            raise UsageError(f"bad parameter in {spec!r}") from None
    if name in DEFAULT_PARAM:
        return name, DEFAULT_PARAM[name]
    raise UsageError(f"{name} needs a parameter, e.g. {name.replace('_', '-')}:3")


def load_structures(cfg: RunConfig):
    if (cfg.algebra is None) == (cfg.file is None):
        raise UsageError("give exactly one of --algebra or --file")
    if cfg.file is not None:
        alg, mod, tag = parse_algebra_file(cfg.file)
        if cfg.field is not None and Field.parse(cfg.field) != alg.field:
            raise UsageError(f"--field {cfg.field} conflicts with file field {alg.field}")
        if cfg.module is not None:
            mod = make_module(cfg.module, alg)
        return alg, mod, tag
    field = Field.parse(cfg.field or "Q")
    name, param = parse_builtin(cfg.algebra)
    alg, tag = builtin_algebra(name, param, field)
    mod = make_module(cfg.module or "trivial", alg)
    return alg, mod, tag


def build_grading(cfg: RunConfig, alg, mod, tag: CartanTag, default: str = "none"):
    spec = cfg.reduce if cfg.reduce != "none" else default
    if spec == "none":
        return None
    if spec == "cartan":
        if not tag.indices:
            raise UsageError(f"{alg.name} has no Cartan tag; use --reduce sigma:<vector>")
        return make_grading(alg, mod, [alg.basis_vector(i) for i in tag.indices])
    if spec.startswith("sigma:"):
        sigmas = []
        for part in spec[6:].split(";"):
            vals = [alg.field.parse_scalar(x) for x in part.split(",")]
            if len(vals) != alg.dim:
                raise UsageError(f"sigma vector has {len(vals)} entries, algebra has dimension {alg.dim}")
            sigmas.append(vals)
        return make_grading(alg, mod, sigmas)
    raise UsageError(f"bad --reduce value {spec!r}")


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text)


def cmd_betti(cfg: RunConfig, out) -> int:
    alg, mod, tag = load_structures(cfg)
    grading = build_grading(cfg, alg, mod, tag)
    calc_alg, calc_mod = (alg, mod) if grading is None else (grading.algebra, grading.module)
    report = betti_numbers(calc_alg, calc_mod, grading, cfg.max_n, cfg.witness)
    _emit(dumps_report(report, cfg.echo()), cfg.json)
    _emit(report_csv(report), cfg.csv)
    formats = {"text": report_text, "csv": report_csv,
               "json": lambda r: dumps_report(r, cfg.echo())}
    out.write(formats[cfg.format](report))
    return EXIT_OK


def cmd_gradedbetti(cfg: RunConfig, out) -> int:
    alg, mod, tag = load_structures(cfg)
    grading = build_grading(cfg, alg, mod, tag, default="cartan")
    degrees = [cfg.n] if cfg.n is not None else range(0, grading.algebra.dim + 1)
    table = []
    for n in degrees:
        for deg, b in sorted(graded_betti(grading, n).items(), key=lambda kv: str(kv[0])):
            table.append({"n": n, "degree": [alg.field.format(x) for x in deg], "betti": b})
    doc = {"config": cfg.echo(), "graded_betti": table}
    _emit(json.dumps(doc, indent=2) + "\n", cfg.json)
    if cfg.format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"graded Betti numbers of {alg.name} over {alg.field}\n")
        for row in table:
            out.write(f"n={row['n']:<3} degree=({', '.join(row['degree'])})  betti={row['betti']}\n")
    return EXIT_OK


def run_suite(name: str, cfg: RunConfig):
    if name == "borel":
        if cfg.N is None:
            raise UsageError("--suite borel needs --N")
        return suites.suite_borel(cfg.N, Field.parse(cfg.field or "Q"))
    alg, mod, tag = load_structures(cfg)
    if name == "jacobi":
        return suites.suite_jacobi(alg)
    if name == "d2":
        return suites.suite_d2(alg, mod, cfg.max_n)
    if name == "direct-vs-recursive":
        return suites.suite_direct_vs_recursive(alg, mod, cfg.max_n)
    grading = build_grading(cfg, alg, mod, tag, default="cartan")
    fn = {"theorem1": suites.suite_theorem1, "corollary1": suites.suite_corollary1,
          "corollary2": suites.suite_corollary2}[name]
    return fn(grading)


def cmd_verify(cfg: RunConfig, out) -> int:
    names = suites.SUITES if cfg.suite == "all" else [cfg.suite]
    if cfg.suite == "all":
        names = [s for s in names if s != "borel" or cfg.N is not None]
    results = [run_suite(name, cfg) for name in names]
    doc = {"config": cfg.echo(), "verdicts": [r.to_dict() for r in results]}
    _emit(json.dumps(doc, indent=2, default=str) + "\n", cfg.json)
    if cfg.format == "json":
        out.write(json.dumps(doc, indent=2, default=str) + "\n")
    else:
        for r in results:
            status = {True: "PASS", False: "FAIL", None: "RECORDED"}[r.passed]
            out.write(f"[{status}] {r.suite}: {r.checks} checks\n")
            for f in r.failures[:10]:
                out.write(f"    {f}\n")
            if r.suite == "borel":
                d = r.data
                out.write(f"    N={d['N']} field={d['field']} expected={d['expected']}\n")
                out.write(f"    full={d['betti_full']} reduced={d['betti_reduced']}\n")
                if "note" in d:
                    out.write(f"    {d['note']}\n")
    return EXIT_FAIL if any(r.passed is False for r in results) else EXIT_OK


def cmd_bench(cfg: RunConfig, out) -> int:
    alg, mod, tag = load_structures(cfg)
    grading = build_grading(cfg, alg, mod, tag, default="cartan")
    t0 = time.perf_counter()
    full = betti_numbers(alg, mod, None, cfg.max_n)
    t_full = (time.perf_counter() - t0) * 1000
    t0 = time.perf_counter()
    red = betti_numbers(grading.algebra, grading.module, grading, cfg.max_n)
    t_red = (time.perf_counter() - t0) * 1000
    rows = []
    for a, b in zip(full.per_n, red.per_n):
        ratio = None if b.dim_C_reduced == 0 else a.dim_C_full / b.dim_C_reduced
        rows.append({"n": a.n, "dimC_full": a.dim_C_full, "dimC_reduced": b.dim_C_reduced,
                     "column_ratio": ratio, "betti_full": a.betti, "betti_reduced": b.betti,
                     "ms_full": full.timings_ms[str(a.n)], "ms_reduced": red.timings_ms[str(a.n)]})
    agree = full.betti == red.betti
    doc = {"config": cfg.echo(), "rows": rows, "betti_agree": agree,
           "timings_ms": {"full": round(t_full, 3), "reduced": round(t_red, 3)}}
    _emit(json.dumps(doc, indent=2) + "\n", cfg.json)
    if cfg.format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"bench {alg.name} ({mod.kind}) over {alg.field}\n")
        out.write(f"{'n':>3} {'dimC_full':>10} {'dimC_red':>9} {'ratio':>8} {'betti':>6} "
                  f"{'ms_full':>10} {'ms_red':>8}\n")
        for r in rows:
            ratio = "inf" if r["column_ratio"] is None else f"{r['column_ratio']:.1f}"
            out.write(f"{r['n']:>3} {r['dimC_full']:>10} {r['dimC_reduced']:>9} {ratio:>8} "
                      f"{r['betti_full']:>6} {r['ms_full']:>10.1f} {r['ms_reduced']:>8.1f}\n")
        out.write(f"total: full {t_full:.0f} ms, reduced {t_red:.0f} ms; betti agree: {agree}\n")
    return EXIT_OK if agree else EXIT_FAIL


COMMANDS = {"betti": cmd_betti, "verify": cmd_verify, "gradedbetti": cmd_gradedbetti, "bench": cmd_bench}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liecohom",
                                     description="Exact Lie algebra cohomology via the Chevalley-Eilenberg complex.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, reduce_default="none"):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--algebra", help=f"builtin NAME[:PARAM], NAME in {', '.join(BUILTIN_NAMES)}")
        src.add_argument("--file", help="algebra JSON file")
        p.add_argument("--module", choices=["trivial", "adjoint"])
        p.add_argument("--field", help="Q or Fp:<p> (default Q)")
        p.add_argument("--reduce", default=reduce_default,
                       help="none | cartan | sigma:v1,v2,...[;w1,w2,...]")
        p.add_argument("--max-n", type=int, dest="max_n")
        p.add_argument("--json", help="write JSON output here")
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("betti", help="Betti numbers of H^n(g, M)")
    common(p)
    p.add_argument("--csv", help="write the per-n table as CSV here")
    p.add_argument("--witness", action="store_true", help="include representative cocycles (JSON)")

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", required=True, choices=list(suites.SUITES) + ["all"])
    p.add_argument("--N", type=int, help="N for the borel suite")

    p = sub.add_parser("gradedbetti", help="Betti numbers split by degree vector")
    common(p, "cartan")
    p.add_argument("--n", type=int, help="cohomological degree (default: all)")

    p = sub.add_parser("bench", help="full vs degree-zero complex sizes and timings")
    common(p, "cartan")
    return parser


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, ParseError, FieldError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValidationError, GradingError, CohomologyError) as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    if cfg.command in ("betti", "gradedbetti", "bench") and cfg.algebra is None and cfg.file is None:
        parser.error("one of --algebra or --file is required")
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
