"""Batch command line: relation sweeps, basis verification, character tables."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
import time
from importlib.metadata import PackageNotFoundError, version

from . import affine, basis, qseries
from .affine import K, Lam, Mode, e, f, h
from .fock import ElementaryVector, FockVector, enumerate_elementary

SCHEMA = "fock-basis/1"
MAX_DIAGNOSTICS = 20

log = logging.getLogger("fockbasis")


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def parse_range(text: str) -> tuple[int, int]:
    """'A..B' -> (A, B); a bare integer N means -N..N."""
    text = text.replace("−", "-")
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            hi = int(text)
            lo = -hi
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def parse_indices(text: str) -> tuple[int, ...]:
    text = text.replace("−", "-").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------- checks


def relation_symbols(kinds: list[str], modes: tuple[int, int]) -> list[Mode]:
    lo, hi = modes
    out = []
    for kind in ("e", "f", "h", "Lambda"):
        if kind in kinds:
            out.extend(Mode(kind, k) for k in range(lo, hi + 1))
    if "K" in kinds:
        out.append(K)
    return out


def test_vectors(charges: tuple[int, int], max_energy: int, sector_charge: int | None = None) -> list[ElementaryVector]:
    lo, hi = charges
    return [w for m in range(lo, hi + 1) for d in range(max_energy + 1) for w in enumerate_elementary(m, d)]


def _group(a: Mode, b: Mode) -> str:
    kinds = {a.kind, b.kind}
    if "K" in kinds or kinds <= {"e", "f", "h"}:
        return "sl2_relations"
    if kinds == {"Lambda"}:
        return "heisenberg"
    lam = a if a.kind == "Lambda" else b
    return "even_lambda_commutation" if lam.i % 2 == 0 else "odd_lambda_brackets"


class Group:
    def __init__(self, name: str):
        self.name = name
        self.checks = 0
        self.failures = 0
        self.diagnostics: list[dict] = []

    def record(self, ok: bool, diagnostic=None) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if diagnostic is not None and len(self.diagnostics) < MAX_DIAGNOSTICS:
                self.diagnostics.append(diagnostic() if callable(diagnostic) else diagnostic)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checks": self.checks,
            "failures": self.failures,
            "ok": self.ok,
            "diagnostics": self.diagnostics,
        }


def run_relations(kinds, modes, charges, max_energy, esq_modes, esq_energy) -> list[Group]:
    symbols = relation_symbols(kinds, modes)
    vectors = test_vectors(charges, max_energy)
    groups = {n: Group(n) for n in ("sl2_relations", "heisenberg", "odd_lambda_brackets", "even_lambda_commutation")}
    for w in vectors:
        v = FockVector.basis(w)
        for x, a in enumerate(symbols):
            for b in symbols[x:]:
                check = affine.verify_relation(a, b, v)
                groups[_group(a, b)].record(check.ok, check.diagnostic)
    out = [g for g in groups.values() if g.checks]

    lo, hi = modes
    if "Lambda" in kinds and "e" in kinds and "f" in kinds:
        ident = Group("odd_lambda_identity")
        for k in range(lo, hi):
            for w in vectors:
                v = FockVector.basis(w)
                diff = affine.apply_lambda(2 * k + 1, v) - affine.apply_e(k, v) - affine.apply_f(k + 1, v)
                ident.record(not diff, lambda: {"a": str(Lam(2 * k + 1)), "b": f"{e(k)}+{f(k + 1)}",
                                                "vector": v.to_json(), "lhs_minus_rhs": diff.to_json()})
        out.append(ident)

    if "e" in kinds and esq_modes is not None:
        esq = Group("e_squared")
        for N in range(-esq_modes, esq_modes + 1):
            for d in range(esq_energy + 1):
                for w in enumerate_elementary(0, d):
                    v = FockVector.basis(w)
                    r = affine.esq_mode_sum(N, v)
                    esq.record(not r, lambda: {"a": f"e(z)^2 mode {N}", "b": "",
                                               "vector": v.to_json(), "lhs_minus_rhs": r.to_json()})
        out.append(esq)
    return out


def run_basis(sector: int, max_energy: int, q_max: int, span_max: int) -> dict:
    cells = [basis.independence_check(c) for c in basis.fibonacci_cells(q_max, 0, sector)]
    spans = [basis.spanning_check(n, m, 0, sector) for m in range(span_max + 1) for n in range(m + 1)]
    glob = basis.global_basis_check(max_energy, sector)
    return {
        "fibonacci_cells": [c.to_json() | {"ok": c.ok} for c in cells],
        "spanning": [s.to_json() | {"ok": s.ok} for s in spans],
        "global": glob.to_json(),
        "ok": all(c.ok for c in cells) and all(s.ok for s in spans) and glob.ok,
    }


def build_series(name: str, j: int, q_max: int, z_min: int, z_max: int) -> qseries.BivariateSeries:
    if name == "L01":
        return qseries.ch_L01(q_max, z_min, z_max)
    if name == "L11":
        return qseries.ch_L11(q_max, z_min, z_max)
    if name == "W":
        return qseries.ch_W(j, q_max, z_min, z_max)
    return qseries.ch_F(q_max, z_min, z_max)


def fock_enumeration_totals(q_max: int, z_min: int, z_max: int) -> list[int]:
    return [sum(len(enumerate_elementary(m, d)) for m in range(z_min, z_max + 1)) for d in range(q_max + 1)]


def run_apply(indices: tuple[int, ...], tail: int, sector: int) -> dict:
    v = basis.apply_monomial(indices, tail, sector)
    lead = None
    try:
        lead = basis.leading_vector(basis.FibonacciMonomial(tuple(sorted(indices))), tail, sector)
    except ValueError:
        pass
    return {
        "monomial": list(sorted(indices)),
        "tail": tail,
        "sector": sector,
        "start": basis.vacuum_vector(tail, sector).to_json(),
        "expansion": v.to_json(),
        "leading": lead.to_json() if lead is not None else None,
        "leading_coeff": str(v.coefficient_of(lead)) if lead is not None else None,
        "terms": len(v),
    }


def run_qbinom(N: int) -> dict:
    rows = [{"N": n, "ok": qseries.qbinomial_identity_check(n)} for n in range(1, N + 1)]
    stab = qseries.gaussian_stabilization_check(5, 10)
    return {"identity": rows, "gaussian_stabilization": {"m_max": 5, "q_max": 10, "ok": stab},
            "ok": all(r["ok"] for r in rows) and stab}


# ---------------------------------------------------------------- rendering


def _text_report(report: dict) -> str:
    lines = [f"{report['command']}  ({'PASS' if report['ok'] else 'FAIL'})"]
    res = report["results"]
    cmd = report["command"]
    if cmd == "verify-relations":
        for g in res["groups"]:
            lines.append(f"  {'PASS' if g['ok'] else 'FAIL'} {g['name']}: {g['checks']} checks, {g['failures']} failures")
            for d in g["diagnostics"][:3]:
                lines.append(f"      [{d['a']}, {d['b']}] on {d['vector']}: {d['lhs_minus_rhs']}")
    elif cmd == "verify-basis":
        lines.append("  fibonacci cells (deg_z, deg_q): count rank character triangular")
        for c in res["fibonacci_cells"]:
            if c["count"] or not c["ok"]:
                lines.append(f"    ({c['deg_z']}, {c['deg_q']}): {c['count']} {c['rank']} {c['character_coeff']} {c['triangular']}")
        bad_span = [s for s in res["spanning"] if not s["ok"]]
        lines.append(f"  spanning: {len(res['spanning'])} cells, {len(bad_span)} failures")
        lines.append("  semi-infinite cells (weight, energy): count rank kernel character")
        for c in res["global"]["cells"]:
            lines.append(f"    ({c['weight']}, {c['energy']}): {c['count']} {c['rank']} {c['kernel_dim']} "
                         f"{c['character_coeff']}{'' if c['ok'] else '  FAIL'}")
    elif cmd == "characters":
        lines.append(res["table"])
    elif cmd == "apply":
        lines.append(f"  e-monomial {res['monomial']} on tail {res['tail']} of sector {res['sector']}")
        lead = res["leading"]
        for t in res["expansion"]:
            mark = "  <- leading" if t["term"] == lead else ""
            w = ElementaryVector.from_json(t["term"])
            lines.append(f"    {t['coeff']:>4} {w}{mark}")
        if not res["expansion"]:
            lines.append("    0")
    elif cmd == "qbinom-identity":
        for r in res["identity"]:
            lines.append(f"  {'PASS' if r['ok'] else 'FAIL'} N={r['N']}")
        st = res["gaussian_stabilization"]
        lines.append(f"  {'PASS' if st['ok'] else 'FAIL'} gaussian stabilization m<={st['m_max']}, q<={st['q_max']}")
    return "\n".join(lines) + "\n"


def _csv_report(report: dict) -> str:
    res = report["results"]
    cmd = report["command"]
    if cmd == "characters":
        return res["csv"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if cmd == "verify-basis":
        cols = ["sector", "weight", "energy", "count", "rank", "kernel_dim", "character_coeff", "ok"]
        writer.writerow(cols)
        for c in res["global"]["cells"]:
            writer.writerow([c[k] for k in cols])
    elif cmd == "verify-relations":
        writer.writerow(["group", "checks", "failures", "ok"])
        for g in res["groups"]:
            writer.writerow([g["name"], g["checks"], g["failures"], g["ok"]])
    elif cmd == "apply":
        writer.writerow(["charge", "partition", "coeff", "leading"])
        for t in res["expansion"]:
            writer.writerow([t["term"]["charge"], " ".join(map(str, t["term"]["partition"])), t["coeff"],
                             t["term"] == res["leading"]])
    else:
        writer.writerow(["N", "ok"])
        for r in res["identity"]:
            writer.writerow([r["N"], r["ok"]])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv_report(report)
    return _text_report(report)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="log wall time to stderr")

    parser = argparse.ArgumentParser(prog="fock-basis", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-relations", parents=[common], help="representation property sweep")
    p.add_argument("--modes", type=parse_range, default=(-4, 4), help="mode index window A..B")
    p.add_argument("--charges", type=parse_range, default=(-2, 2), help="charge window A..B")
    p.add_argument("--max-energy", type=nonnegative, default=10)
    p.add_argument("--kinds", default="e,f,h,Lambda,K", help="comma-separated subset of e,f,h,Lambda,K")
    p.add_argument("--esq-modes", type=nonnegative, default=8, help="check e(z)^2 modes |N| <= this")
    p.add_argument("--esq-energy", type=nonnegative, default=8)

    p = sub.add_parser("verify-basis", parents=[common], help="monomial basis checks for one sector")
    p.add_argument("--sector", type=int, choices=(0, 1), default=0)
    p.add_argument("--max-energy", type=nonnegative, default=10)
    p.add_argument("--q-max", type=nonnegative, default=14, help="largest deg_q of Fibonacci cells")
    p.add_argument("--span-max", type=nonnegative, default=10, help="largest deg_q of spanning checks")

    p = sub.add_parser("characters", parents=[common], help="character tables")
    p.add_argument("--series", choices=("L01", "L11", "W", "F"), default="L01")
    p.add_argument("--j", type=int, default=0, help="tail index for --series W")
    p.add_argument("--q-max", type=nonnegative, default=6)
    p.add_argument("--z-min", type=int, default=-2)
    p.add_argument("--z-max", type=int, default=2)

    p = sub.add_parser("apply", parents=[common], help="expand an e-monomial on an extremal vector")
    p.add_argument("monomial", type=parse_indices, nargs="?", default=None, help='indices "i1,i2,..."')
    p.add_argument("--monomial", dest="monomial_opt", type=parse_indices, default=None, metavar="LIST")
    p.add_argument("--sector", type=int, choices=(0, 1), default=0)
    p.add_argument("--tail", type=int, default=0)

    p = sub.add_parser("qbinom-identity", parents=[common], help="Gaussian binomial vs. gap-two partitions")
    p.add_argument("--N", type=nonnegative, default=12)
    return parser


def run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    cmd = args.command
    if cmd == "verify-relations":
        kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
        unknown = set(kinds) - {"e", "f", "h", "Lambda", "K"}
        if unknown or not kinds:
            parser.error(f"--kinds: unknown or empty {sorted(unknown)}")
        groups = run_relations(kinds, args.modes, args.charges, args.max_energy, args.esq_modes, args.esq_energy)
        config = {"modes": list(args.modes), "charges": list(args.charges), "max_energy": args.max_energy,
                  "kinds": kinds, "esq_modes": args.esq_modes, "esq_energy": args.esq_energy}
        results = {"groups": [g.to_json() for g in groups]}
        ok = all(g.ok for g in groups)
    elif cmd == "verify-basis":
        config = {"sector": args.sector, "max_energy": args.max_energy, "q_max": args.q_max,
                  "span_max": args.span_max}
        results = run_basis(args.sector, args.max_energy, args.q_max, args.span_max)
        ok = results["ok"]
    elif cmd == "characters":
        if args.z_min > args.z_max:
            parser.error("--z-min exceeds --z-max")
        series = build_series(args.series, args.j, args.q_max, args.z_min, args.z_max)
        config = {"series": args.series, "j": args.j, "q_max": args.q_max, "z_min": args.z_min, "z_max": args.z_max}
        results = {"series": series.to_json(), "table": series.table(), "csv": series.to_csv()}
        ok = True
        if args.series == "F":
            totals = fock_enumeration_totals(args.q_max, args.z_min, args.z_max)
            results["enumeration_totals"] = totals
            ok = list(series.at_z_one()[d] for d in range(args.q_max + 1)) == totals
    elif cmd == "apply":
        if args.monomial is not None and args.monomial_opt is not None:
            parser.error("give the monomial once")
        args.monomial = args.monomial_opt or args.monomial or ()
        try:
            results = run_apply(args.monomial, args.tail, args.sector)
        except ValueError as exc:
            parser.error(str(exc))
        config = {"monomial": list(args.monomial), "tail": args.tail, "sector": args.sector}
        ok = True
    else:
        config = {"N": args.N}
        results = run_qbinom(args.N)
        ok = results["ok"]
    return {
        "schema": SCHEMA,
        "tool": "fock-basis",
        "version": tool_version(),
        "command": cmd,
        "config": config,
        "results": results,
        "ok": ok,
    }


_NEGATIVE = re.compile(r"^[-−]\d")
_SIGNED_OPTIONS = {"--modes", "--charges", "--tail", "--j", "--z-min", "--z-max", "--monomial"}


def _attach_negative_values(argv: list[str]) -> list[str]:
    """argparse reads "-2..2" or "-5,-3" as options; glue such values to their flag."""
    out: list[str] = []
    for n, a in enumerate(argv):
        if a == "--":
            return out + argv[n:]
        if _NEGATIVE.match(a) and out and out[-1] in _SIGNED_OPTIONS:
            out[-1] = f"{out[-1]}={a}"
        elif _NEGATIVE.match(a) and "," in a:
            out.append(f"--monomial={a}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    start = time.perf_counter()
    report = run(args, parser)
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.timing:
        log.info("wall time %.3f s", time.perf_counter() - start)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
