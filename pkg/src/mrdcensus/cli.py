"""Command-line entry point: ``python -m mrdcensus <subcommand> ...``.

Exit codes: 0 when every requested check passes, 1 on a verification
failure, 2 on a usage error (bad q, malformed matrix, unknown suite, I/O).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import mat3
from .census import BRUTE_MAX_Q, CensusOptions, CensusReport, CheckResult, census_report, formula_report
from .gfield import MAX_Q, FieldCtx, FieldError, MonicCubic, build_extension, build_field, irreducible_cubics, prime_power
from .menichetti import enumerate_S_parametric
from .rankcode import is_mrd
from .semifield import SemifieldView, classify, dual_triple, has_zero_divisors, is_self_dual
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "table")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    qs: list[int] = field(default_factory=lambda: [2])
    mode: str | None = None  # brute | parametric | formula; None = brute and parametric
    long: bool = False
    out: str | None = None
    fmt: str | None = None
    workers: int = 1
    seed: int = 0
    suite: str = "all"
    timing: bool = False
    f: str | None = None
    z: str | None = None

    def validate(self) -> None:
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.subcommand == "formula" or (self.subcommand == "census" and self.mode == "formula"):
            limit = None
        elif self.subcommand == "irreducibles":
            limit = MAX_Q
        else:
            limit = BRUTE_MAX_Q
        for q in self.qs:
            if prime_power(q) is None:
                raise UsageError(f"q={q} is not a prime power")
            if limit is not None and q > limit:
                raise UsageError(f"q={q} is out of range for {self.subcommand}; at most {limit}")
        if self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)} or all")
        if self.fmt is not None and self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")


# -- parsing helpers ---------------------------------------------------------


def parse_q_list(values: list[str]) -> list[int]:
    out: list[int] = []
    for v in values:
        for part in v.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                out.append(int(part))
            except ValueError:
                raise UsageError(f"invalid q {part!r}") from None
    if not out:
        raise UsageError("empty q list")
    return out


def _ints(text: str, q: int, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed {what}: {text!r}") from None
    if len(vals) != n or any(not 0 <= v < q for v in vals):
        raise UsageError(f"{what} needs {n} field indices in 0..{q - 1}, got {text!r}")
    return vals


def parse_f(text: str, q: int) -> MonicCubic:
    return MonicCubic(*_ints(text, q, 3, "--f"))


def parse_z(text: str, q: int) -> mat3.Mat3:
    """Columns separated by ';'.  Three columns (the first must be 0,0,1) or the last two."""
    cols = [c for c in text.split(";") if c.strip()]
    if len(cols) == 2:
        cols = ["0,0,1"] + cols
    if len(cols) != 3:
        raise UsageError(f"--z needs 2 or 3 columns separated by ';', got {text!r}")
    parsed = [_ints(c, q, 3, "--z column") for c in cols]
    if parsed[0] != (0, 0, 1):
        raise UsageError("the first column of Z must be 0,0,1")
    return mat3.from_columns(*parsed)


# -- serialization -------------------------------------------------------------


def _str_or_none(v):
    return None if v is None else str(v)


def _check_json(c: CheckResult, timing: bool) -> dict:
    return {"name": c.name, "pass": c.passed, "millis": round(c.millis, 1) if timing else 0}


def _field_name(q: int) -> str:
    return build_field(q).describe() if q <= MAX_Q else f"F_{q}"


def report_json(rep: CensusReport, timing: bool) -> dict:
    return {
        "q": rep.q,
        "field": _field_name(rep.q),
        "counts": {k: _str_or_none(v) for k, v in rep.counts().items()},
        "proportion": {"num": str(rep.proportion.numerator), "den": str(rep.proportion.denominator)},
        "classes": {k: str(v) for k, v in rep.class_counts.items()},
        "checks": [_check_json(c, timing) for c in rep.checks],
    }


def _check_line(c: CheckResult, timing: bool) -> str:
    mark = "PASS" if c.passed else "FAIL"
    ms = f" [{c.millis:.0f} ms]" if timing else ""
    detail = f"  ({c.detail})" if c.detail and not c.passed else ""
    return f"  {mark} {c.name}{ms}{detail}"


def report_table(rep: CensusReport, timing: bool) -> str:
    lines = [f"q = {rep.q}   {_field_name(rep.q)}"]
    for k, v in rep.counts().items():
        if v is not None:
            lines.append(f"  {k:<20} {v}")
    lines.append(f"  {'proportion':<20} {rep.proportion}  (~{float(rep.proportion):.6e})")
    for k, v in rep.class_counts.items():
        lines.append(f"  class {k:<28} {v}")
    lines += [_check_line(c, timing) for c in rep.checks]
    return "\n".join(lines)


def report_csv_rows(rep: CensusReport) -> list[list[str]]:
    rows = [[str(rep.q), k, str(v)] for k, v in rep.counts().items() if v is not None]
    rows.append([str(rep.q), "proportion", str(rep.proportion)])
    rows += [[str(rep.q), f"class_{k}", str(v)] for k, v in rep.class_counts.items()]
    rows += [[str(rep.q), f"check_{c.name}", "pass" if c.passed else "fail"] for c in rep.checks]
    return rows


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows: list[list[str]], header: list[str], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands ---------------------------------------------------------------


def _census_options(cfg: RunConfig) -> CensusOptions:
    mode = cfg.mode
    return CensusOptions(
        brute=mode in (None, "brute"),
        parametric=mode in (None, "parametric"),
        long=cfg.long,
        workers=cfg.workers,
    )


def cmd_census(cfg: RunConfig, formula_only: bool = False) -> tuple[str, bool]:
    fmt = cfg.fmt or "table"
    reports = []
    for q in cfg.qs:
        if formula_only or cfg.mode == "formula":
            reports.append(formula_report(q))
        else:
            reports.append(census_report(q, _census_options(cfg)))
    ok = all(r.passed for r in reports)
    if fmt == "json":
        objs = [report_json(r, cfg.timing) for r in reports]
        text = _dump_json(objs[0] if len(objs) == 1 else objs)
    elif fmt == "csv":
        rows = [row for r in reports for row in report_csv_rows(r)]
        text = _csv_text(rows, ["q", "key", "value"])
    else:
        text = "\n\n".join(report_table(r, cfg.timing) for r in reports) + "\n"
    return text, ok


def _triple_row(v: SemifieldView) -> list[int]:
    z = v.z
    return [*v.f_coeffs, z[1], z[2], z[4], z[5], z[7], z[8]]


CSV_TRIPLE_HEADER = ["a", "b", "c", "z12", "z13", "z22", "z23", "z32", "z33", "class"]


def cmd_enumerate(cfg: RunConfig) -> tuple[str, bool]:
    from .census import brute_force_S

    fmt = cfg.fmt or "csv"
    chunks = []
    objs = []
    for q in cfg.qs:
        F = build_field(q)
        if cfg.mode == "brute":
            triples = brute_force_S(q, cfg.workers).triples
        else:
            triples = enumerate_S_parametric(build_extension(F), cfg.workers)
        views = [SemifieldView(t) for t in triples]
        rows = [(_triple_row(v), classify(v).value) for v in views]
        if fmt == "json":
            objs.append({
                "q": q,
                "field": F.describe(),
                "count": str(len(rows)),
                "triples": [{"f": r[:3], "z": r[3:], "class": k} for r, k in rows],
            })
        elif fmt == "csv":
            comments = [
                f"q={q}; {F.describe()}; entries are field-element indices",
                "f = x^3 - c x^2 - b x - a; Z first column is (0,0,1)",
            ]
            chunks.append(_csv_text([[*r, k] for r, k in rows], CSV_TRIPLE_HEADER, comments))
        else:
            lines = [f"q = {q}   {F.describe()}   |S| = {len(rows)}", "  " + " ".join(CSV_TRIPLE_HEADER)]
            lines += ["  " + " ".join(str(x) for x in r) + " " + k for r, k in rows]
            chunks.append("\n".join(lines) + "\n")
    if fmt == "json":
        return _dump_json(objs[0] if len(objs) == 1 else objs), True
    return "".join(chunks), True


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    fmt = cfg.fmt or "table"
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    results: list[tuple[int, str, list[CheckResult]]] = []
    for q in cfg.qs:
        for name in names:
            results.append((q, name, run_suite(name, q, seed=cfg.seed, long=cfg.long)))
    ok = all(c.passed for _, _, cs in results for c in cs)
    if fmt == "json":
        objs = [{"q": q, "suite": n, "checks": [_check_json(c, cfg.timing) for c in cs]} for q, n, cs in results]
        return _dump_json({"pass": ok, "results": objs}), ok
    if fmt == "csv":
        rows = [[q, n, c.name, "pass" if c.passed else "fail"] for q, n, cs in results for c in cs]
        return _csv_text(rows, ["q", "suite", "check", "result"]), ok
    lines = []
    for q, n, cs in results:
        lines.append(f"suite {n}, q = {q}")
        lines += [_check_line(c, cfg.timing) for c in cs]
    lines.append("all checks passed" if ok else "VERIFICATION FAILED")
    return "\n".join(lines) + "\n", ok


def poly_string(F: FieldCtx, f: MonicCubic) -> str:
    terms = ["x^3"]
    for coef, mono in ((F.neg(f.c), "x^2"), (F.neg(f.b), "x"), (F.neg(f.a), "")):
        if coef == 0:
            continue
        if mono:
            terms.append(mono if coef == 1 else f"{coef}*{mono}")
        else:
            terms.append(str(coef))
    return " + ".join(terms)


def cmd_irreducibles(cfg: RunConfig) -> tuple[str, bool]:
    fmt = cfg.fmt or "table"
    per_q = []
    for q in cfg.qs:
        F = build_field(q)
        per_q.append((q, F, irreducible_cubics(F)))
    if fmt == "json":
        objs = [{"q": q, "field": F.describe(), "cubics": [list(f) for f in fs]} for q, F, fs in per_q]
        return _dump_json(objs[0] if len(objs) == 1 else objs), True
    if fmt == "csv":
        rows = [[q, *f, poly_string(F, f)] for q, F, fs in per_q for f in fs]
        return _csv_text(rows, ["q", "a", "b", "c", "polynomial"]), True
    lines = []
    for q, F, fs in per_q:
        lines.append(f"q = {q}   {F.describe()}   {len(fs)} monic irreducible cubics (a,b,c with f = x^3 - c x^2 - b x - a)")
        lines += [f"  {f.a},{f.b},{f.c}   {poly_string(F, f)}" for f in fs]
    return "\n".join(lines) + "\n", True


def cmd_inspect(cfg: RunConfig) -> tuple[str, bool]:
    if len(cfg.qs) != 1:
        raise UsageError("inspect takes exactly one q")
    if cfg.f is None or cfg.z is None:
        raise UsageError("inspect needs --f and --z")
    q = cfg.qs[0]
    F = build_field(q)
    f = parse_f(cfg.f, q)
    Z = parse_z(cfg.z, q)
    v = SemifieldView.from_matrices(F, mat3.companion(f), Z)
    mrd = is_mrd(v.triple)
    info: dict = {"q": q, "field": F.describe(), "f": list(f), "z": _triple_row(v)[3:], "mrd": mrd}
    if mrd:
        w = dual_triple(v)
        info["class"] = classify(v).value
        info["self_dual"] = is_self_dual(v)
        info["dual"] = {"g": list(w.f_coeffs), "z": _triple_row(w)[3:]}
        dual_text = "self-dual" if info["self_dual"] else (
            f"dual: g={','.join(map(str, w.f_coeffs))} z={';'.join(','.join(map(str, mat3.column(w.z, j))) for j in (1, 2))}"
        )
        line = f"MRD: yes; class: {info['class']}; {dual_text}"
    else:
        info["zero_divisors"] = has_zero_divisors(v)
        line = "MRD: no; zero divisors: yes"
    fmt = cfg.fmt or "table"
    if fmt == "json":
        return _dump_json(info), True
    if fmt == "csv":
        row = [*_triple_row(v), info.get("class", "not_mrd")]
        return _csv_text([row], CSV_TRIPLE_HEADER, [f"q={q}; {F.describe()}"]), True
    return line + "\n", True


COMMANDS = {
    "census": cmd_census,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "irreducibles": cmd_irreducibles,
    "inspect": cmd_inspect,
    "formula": lambda cfg: cmd_census(cfg, formula_only=True),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", nargs="+", default=["2"], help="field sizes, e.g. --q 2 3 5 or --q 2,3,5")
    common.add_argument("--out", help="write output to PATH instead of stdout")
    common.add_argument("--format", dest="fmt", choices=FORMATS)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--long", action="store_true", help="enable the slow exhaustive checks")
    common.add_argument("--timing", action="store_true", help="report wall-clock millis (output is then not reproducible)")

    p = argparse.ArgumentParser(prog="mrdcensus", description="Census of [3x3;3]-MRD codes over small finite fields.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    c = sub.add_parser("census", parents=[common], help="full census report per q")
    c.add_argument("--mode", choices=("brute", "parametric", "formula"))
    e = sub.add_parser("enumerate", parents=[common], help="emit every normalized triple of S")
    e.add_argument("--mode", choices=("brute", "parametric"), default="parametric")
    v = sub.add_parser("verify", parents=[common], help="run named property suites")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    sub.add_parser("irreducibles", parents=[common], help="list monic irreducible cubics")
    i = sub.add_parser("inspect", parents=[common], help="analyse one triple (I, C_f, Z)")
    i.add_argument("--f", required=True, help="a,b,c with f = x^3 - c x^2 - b x - a")
    i.add_argument("--z", required=True, help="columns of Z separated by ';'")
    sub.add_parser("formula", parents=[common], help="closed-form counts for any prime power q")
    return p


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=ns.subcommand,
        qs=parse_q_list(ns.q),
        mode=getattr(ns, "mode", None),
        long=ns.long,
        out=ns.out,
        fmt=ns.fmt,
        workers=ns.workers,
        seed=ns.seed,
        suite=getattr(ns, "suite", "all"),
        timing=ns.timing,
        f=getattr(ns, "f", None),
        z=getattr(ns, "z", None),
    )
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> int:
    try:
        text, ok = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse reports usage errors this way
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
