"""Command-line front end: ``qschubert {report,verify,normal,ls,center}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .ncengine import CapOverflow, build_context, ls_relation
from .normalia import find_central, find_normal
from .rootsys import CartanDatum, cartan_datum, parse_word, word_to_element
from .spectra import max_spectrum_report, pair_report, stratification_summary
from .verify import CHECKS, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# -- input parsing ----------------------------------------------------------------------------


def _datum(label: str) -> CartanDatum:
    try:
        return cartan_datum(label)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad --type {label!r}: {exc}") from None


def _word(datum: CartanDatum, text: str, flag: str) -> tuple[int, ...]:
    try:
        word = parse_word(datum, text)
    except ValueError as exc:
        raise UsageError(f"bad {flag} {text!r}: {exc}") from None
    if not word_to_element(datum, word)[1]:
        raise UsageError(f"{flag} {text!r} is not a reduced word in {datum.name}")
    return word


def _element(datum: CartanDatum, text: str, flag: str):
    return word_to_element(datum, _word(datum, text, flag))[0]


_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*a(\d+)\s*$")


def parse_degree(datum: CartanDatum, text: str) -> tuple[int, ...]:
    """Root-lattice degree from ``2a1+a2`` or from coordinates ``2,1``."""
    text = text.strip()
    r = datum.rank
    if "a" in text:
        out = [0] * r
        for term in text.split("+"):
            m = _TERM.match(term)
            if not m or not 1 <= int(m.group(2)) <= r:
                raise UsageError(f"bad --degree term {term!r}")
            out[int(m.group(2)) - 1] += int(m.group(1) or 1)
        return tuple(out)
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --degree {text!r}") from None
    if len(out) != r or min(out) < 0:
        raise UsageError(f"--degree needs {r} non-negative coordinates")
    return out


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --pair {text!r}; expected i,j") from None
    return i, j


# -- text rendering ---------------------------------------------------------------------------


def _render(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, dict) for x in v) and all(
        not isinstance(x, list) or all(not isinstance(y, (list, dict)) for y in x) for x in v
    )


def _scalar(v) -> str:
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def _pairs_table(payload: dict) -> list[str]:
    head = f"{'w+':<12}{'w-':<12}{'I':<10}{'k':>3}{'dim':>5}  stabilizer"
    lines = [f"{payload['datum']}: {len(payload['pairs'])} pairs", head]
    for p in payload["pairs"]:
        lines.append(
            f"{p['w_plus'] or 'e':<12}{p['w_minus'] or 'e':<12}{str(p['I']):<10}{p['leaf']['k']:>3}"
            f"{p['center_dimension']:>5}  {p['stabilizer']['description']}"
        )
    return lines


def _ledger_lines(payload: dict) -> list[str]:
    lines = []
    for r in payload["checks"]:
        tag = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{tag} {r['name']}  instances={r['instances']}  {r['seconds']}s")
        for f in r["failures"][:5]:
            lines.append("     " + json.dumps(f, sort_keys=True))
    lines.append(f"overall: {'pass' if payload['passed'] else 'fail'}")
    return lines


def emit(payload, fmt: str, out: str | None, text_lines: list[str] | None = None) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(text_lines if text_lines is not None else _render(payload)) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------------------------


def cmd_report(args) -> int:
    datum = _datum(args.type)
    if args.all_pairs:
        pairs = [pair_report(datum, wp, wm) for wp in datum.weyl_group for wm in datum.weyl_group]
        payload = {
            "datum": datum.name,
            "pairs": pairs,
            "stratification": stratification_summary(datum),
            "max_spectrum": max_spectrum_report(datum),
        }
        emit(payload, args.format, args.out, _pairs_table(payload))
        return EXIT_OK
    if args.wplus is None or args.wminus is None:
        raise UsageError("report needs --wplus and --wminus, or --all-pairs")
    wp = _element(datum, args.wplus, "--wplus")
    wm = _element(datum, args.wminus, "--wminus")
    emit(pair_report(datum, wp, wm), args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    datum = _datum(args.type)
    words = [_word(datum, w, "--word") for w in args.word] if args.word else None
    checks = args.check or list(CHECKS)
    results = run_checks(datum, checks, words, args.height, args.degree_cap, args.margin)
    payload = {
        "datum": datum.name,
        "height": args.height,
        "degree_cap": args.degree_cap,
        "margin": args.margin,
        "words": None if words is None else [list(w) for w in words],
        "checks": results,
        "passed": all(r["passed"] for r in results),
    }
    emit(payload, args.format, args.out, _ledger_lines(payload))
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def cmd_normal(args) -> int:
    datum = _datum(args.type)
    word = _word(datum, args.word, "--word")
    ctx = build_context(datum, word, cap=args.degree_cap)
    if args.degree:
        degrees = [parse_degree(datum, args.degree)]
    else:
        degrees = [(0,) * datum.rank] + ctx.degrees_up_to(args.height)
    findings = [find_normal(ctx, g, margin=args.margin) for g in degrees]
    if not args.degree:
        findings = [f for f in findings if f.dimension]
    payload = {"datum": datum.name, "word": list(word), "degrees": [f.to_json() for f in findings]}
    lines = [f"{datum.name} word {','.join(map(str, word)) or 'e'}"]
    for f in findings:
        lines.append(f"degree {list(f.degree)}: dimension {f.dimension}")
        for c, basis in f.lines:
            for v in basis:
                lines.append(f"  exponents {list(c)}: {v}")
    emit(payload, args.format, args.out, lines)
    return EXIT_OK


def cmd_ls(args) -> int:
    datum = _datum(args.type)
    word = _word(datum, args.word, "--word")
    ctx = build_context(datum, word, cap=args.degree_cap)
    if args.pair:
        i, j = _pair(args.pair)
        if not 1 <= i < j <= ctx.l:
            raise UsageError(f"--pair needs 1 <= i < j <= {ctx.l}")
        pairs = [(i, j)]
    else:
        pairs = [(i, j) for i in range(1, ctx.l + 1) for j in range(i + 1, ctx.l + 1)]
    rows, lines = [], []
    for i, j in pairs:
        v = ls_relation(ctx, i, j)
        e = ctx.pair(i, j)
        rows.append({"i": i, "j": j, "q_exponent": e, "rhs": v.to_json(), "terms": len(v.coords)})
        lines.append(f"X{i}*X{j} - q^{e}*X{j}*X{i} = {v}")
    emit({"datum": datum.name, "word": list(word), "relations": rows}, args.format, args.out, lines)
    return EXIT_OK


def cmd_center(args) -> int:
    datum = _datum(args.type)
    word = _word(datum, args.word, "--word")
    ctx = build_context(datum, word, cap=args.degree_cap)
    rep, found = find_central(ctx, args.height)
    nontrivial = [(g, b) for g, b in found if any(g)]
    payload = {
        "datum": datum.name,
        "word": list(word),
        "height": args.height,
        "central": [{"degree": list(g), "basis": [v.to_json() for v in b]} for g, b in nontrivial],
        "check": rep.to_json(),
    }
    if nontrivial:
        lines = [f"degree {list(g)}: {v}" for g, b in nontrivial for v in b]
    else:
        lines = [f"trivial up to height {args.height}"]
    emit(payload, args.format, args.out, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- parser -----------------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="Cartan type, e.g. A2, B2, C3, G2")
    common.add_argument("--height", type=_positive, default=6, help="height cap H (default 6)")
    common.add_argument("--degree-cap", type=_positive, default=12, help="rewriting degree cap D (default 12)")
    common.add_argument("--margin", type=_nonneg, default=2, help="exponent sweep margin (default 2)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="qschubert", description="Quantum Schubert cell computations.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", parents=[common], help="per-pair torus, center, stabilizer and leaf report")
    r.add_argument("--wplus", help="reduced word for w+, comma separated; '' or e for identity")
    r.add_argument("--wminus", help="reduced word for w-")
    r.add_argument("--all-pairs", action="store_true", help="report every pair of Weyl group elements")
    r.set_defaults(func=cmd_report)

    v = sub.add_parser("verify", parents=[common], help="run property suites; exit 1 on failure")
    v.add_argument("--word", action="append", help="restrict PBW-based suites to this word (repeatable)")
    v.add_argument("--check", action="append", choices=CHECKS, help="run only this suite (repeatable)")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("normal", parents=[common], help="normal elements of U(w)")
    n.add_argument("--word", required=True)
    n.add_argument("--degree", help="root-lattice degree, e.g. a1+a2 or 1,1")
    n.set_defaults(func=cmd_normal)

    l = sub.add_parser("ls", parents=[common], help="straightening relations between root vectors")
    l.add_argument("--word", required=True)
    l.add_argument("--pair", help="i,j with i < j (1-based)")
    l.set_defaults(func=cmd_ls)

    c = sub.add_parser("center", parents=[common], help="central elements up to the height cap")
    c.add_argument("--word", required=True)
    c.set_defaults(func=cmd_center)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qschubert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapOverflow as exc:
        print(f"qschubert: error: degree cap too small ({exc}); raise --degree-cap", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["main", "build_parser", "parse_degree", "emit"]
