"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 Unknown.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .ball import UnsupportedPresentation, build_ball, export
from .consequences import SearchBudget
from .depth import PresentationIncompatible, depth_scan, depth_witness_check
from .diagrams import (DIAGRAM_SCHEMA_VERSION, Diagram, DiagramContractError, fp_complement_trivialize, replay,
                       trivialize_bounded)
from .hnn import HnnPresentation, Undecided, canonical_form, equal_in_G
from .homotopy import (CellularHomotopy, ContractViolation, LevelViolation, build_corner, build_push, build_string,
                       verify_levels)
from .oracles import Verdict, bs_oracle, free_oracle, grigorchuk_oracle
from .presets import PRESETS, preset_json
from .regions import RegionLabel, classify
from .words import IllFormedInput, Word, parse_expression

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3
HOMOTOPY_SCHEMA_VERSION = "hnn-homotopy/1"


class InputError(Exception):
    pass


def _word(text: str) -> Word:
    if any(c in text for c in "[]()^ ,1"):
        return parse_expression(text)
    return Word(text)


def _base_word(text: str, P: Optional[HnnPresentation]) -> Word:
    w = _word(text)
    if P is not None:
        allowed = set(P.alphabet.letters(with_stable=True))
        for c in str(w):
            if c not in allowed:
                raise IllFormedInput(f"unknown generator {c!r}")
    return w


def _presentation(args) -> HnnPresentation:
    src = args.presentation
    if src is None:
        raise InputError("this subcommand needs --presentation (a JSON file or preset:NAME)")
    if src.startswith("preset:"):
        try:
            return HnnPresentation.from_json(preset_json(src.split(":", 1)[1]))
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    if not os.path.exists(src):
        raise InputError(f"no such presentation file: {src}")
    return HnnPresentation.load(src)


def _budget(args) -> SearchBudget:
    d = SearchBudget()
    return SearchBudget(max_factors=args.budget_factors or d.max_factors,
                        max_conj_len=args.budget_conj or d.max_conj_len,
                        max_nodes=args.budget_nodes or d.max_nodes,
                        i_max=d.i_max if args.budget_imax is None else args.budget_imax)


def _emit(args, text: str, data: Optional[dict] = None):
    if getattr(args, "format", "text") == "json" and data is not None:
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        print(text)


def _write(path: Optional[str], payload: str):
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


# --- subcommands ---------------------------------------------------------------------

def cmd_reduce(args) -> int:
    P = _presentation(args) if args.presentation else None
    w = _base_word(args.word, P)
    _emit(args, str(w), {"word": str(w), "length": len(w)})
    return EXIT_OK


def cmd_endo(args) -> int:
    P = _presentation(args)
    w = _base_word(args.word, P)
    if args.k < 0:
        raise InputError("k must be nonnegative")
    img = P.phi(w, args.k)
    _emit(args, str(img), {"word": str(w), "k": args.k, "image": str(img)})
    return EXIT_OK


def cmd_canon(args) -> int:
    P = _presentation(args)
    cf = canonical_form(_base_word(args.word, P), P)
    _emit(args, str(cf), cf.to_json())
    return EXIT_OK


def cmd_equal(args) -> int:
    P = _presentation(args)
    r = equal_in_G(_base_word(args.u, P), _base_word(args.v, P), P)
    text = {True: "True", False: "False", None: "Unknown"}[r]
    _emit(args, text, {"u": args.u, "v": args.v, "equal": text})
    return EXIT_UNKNOWN if r is None else EXIT_OK


def cmd_classify(args) -> int:
    P = _presentation(args)
    c = classify(_base_word(args.word, P), args.N, args.M, P)
    _emit(args, str(c), c.to_json())
    return EXIT_UNKNOWN if c.label is RegionLabel.Unknown else EXIT_OK


def cmd_ball(args) -> int:
    P = _presentation(args)
    ball = build_ball(P, args.radius)
    labels = None
    if args.label is not None:
        N, M = (int(x) for x in args.label.split(","))
        labels = {v.id: str(classify(v.word, N, M, P).label) for v in ball.vertices}
    fmt = "json" if args.format == "text" else args.format
    payload = export(ball, fmt, labels).decode()
    _write(args.output, payload)
    if args.output and args.output != "-":
        print(f"wrote {len(ball.vertices)} vertices, {len(ball.edges)} edges, {len(ball.cells)} cells "
              f"to {args.output}")
    return EXIT_OK


def cmd_depth(args) -> int:
    P = _presentation(args)
    if args.scan:
        found = depth_scan(P, args.len_max, args.n_max)
        report = {"scan": {"len_max": args.len_max, "n_max": args.n_max},
                  "witnesses": [w.to_json() for w in found]}
        _write(args.output, json.dumps(report, indent=1, sort_keys=True) + "\n")
        return EXIT_OK
    if args.word is None or args.n is None:
        raise InputError("depth needs WORD and -n (or --scan)")
    wit = depth_witness_check(_base_word(args.word, P), args.n, P)
    _write(args.output, json.dumps(wit.to_json(), indent=1, sort_keys=True) + "\n")
    return {"accepted": EXIT_OK, "rejected": EXIT_FAIL, "indeterminate": EXIT_UNKNOWN}[wit.status]


def _homotopy_payload(H: CellularHomotopy, P: HnnPresentation) -> tuple[str, bool, str]:
    try:
        cert = verify_levels(H, P)
        ok, msg, cj = True, "verified", cert.to_json()
    except LevelViolation as exc:
        ok, msg, cj = False, str(exc), None
    doc = {"schema": HOMOTOPY_SCHEMA_VERSION, "presentation": P.to_json(), "homotopy": H.to_json(P),
           "certificate": cj, "verdict": msg}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n", ok, msg


def _verify_file(path: str) -> tuple[bool, str]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    schema = doc.get("schema")
    if schema == DIAGRAM_SCHEMA_VERSION:
        D, P = Diagram.from_json(doc)
        rep = replay(D, P)
        return rep.ok, f"replay {rep.message}: {rep.moves} moves, levels {rep.min_level}..{rep.max_level}"
    if schema == HOMOTOPY_SCHEMA_VERSION:
        P = HnnPresentation.from_json(doc["presentation"])
        H = CellularHomotopy.from_json(doc["homotopy"])
        try:
            cert = verify_levels(H, P)
        except LevelViolation as exc:
            return False, f"level check failed at {exc}"
        return True, f"level certificate: rows {cert.intervals[:1]}..{cert.intervals[-1:]} base {cert.base_level}"
    raise InputError(f"unknown certificate schema {schema!r}")


def cmd_homotopy(args) -> int:
    if args.action == "verify":
        ok, msg = _verify_file(args.target)
        print(("ok: " if ok else "FAILED: ") + msg)
        return EXIT_OK if ok else EXIT_FAIL
    P = _presentation(args)
    if args.action in ("push", "string", "corner"):
        start = _base_word(args.at, P)
        if args.action == "push":
            H = build_push(start, args.target, args.rows, P)
        elif args.action == "string":
            H = build_string(_base_word(args.target, P), args.rows, P, start)
        else:
            interval = tuple(int(x) for x in args.interval.split(",")) if args.interval else None
            H = build_corner(str(_base_word(args.target, P)), args.rows, P, interval, start)
        payload, ok, msg = _homotopy_payload(H, P)
        _write(args.output, payload)
        if args.output and args.output != "-":
            print(f"{H.kind}: cells per row {H.cell_counts()}; {msg}")
        return EXIT_OK if ok else EXIT_FAIL
    loop = str(_base_word(args.target, P))
    start = _base_word(args.at, P)
    if args.action == "trivialize":
        if args.cap is None:
            raise InputError("trivialize needs --cap")
        D = trivialize_bounded(loop, args.cap, P, _budget(args), start)
    else:
        D = fp_complement_trivialize(loop, args.N, args.M, P, _budget(args), start)
    if not isinstance(D, Diagram):
        print(f"Unknown: {D.reason} ({json.dumps(D.stats, sort_keys=True)})")
        return EXIT_UNKNOWN
    rep = replay(D, P)
    _write(args.output, D.dumps(P))
    if args.output and args.output != "-":
        print(f"diagram: {len(D.moves)} moves {D.cell_counts()}; replay {rep.message}, "
              f"levels {rep.min_level}..{rep.max_level}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.name:
        name = args.name
        if name == "free":
            o = free_oracle(sorted({c.lower() for c in args.word if c.isalpha()}) or ["a"])
        elif name == "grigorchuk":
            o = grigorchuk_oracle()
        elif name.startswith("bs:"):
            m, n = (int(x) for x in name[3:].split(","))
            o = bs_oracle(m, n)
        else:
            raise InputError(f"unknown oracle {name!r}; use free, grigorchuk or bs:m,n")
    else:
        o = _presentation(args).oracle
    v = o.is_identity(_word(args.word))
    data = {"word": args.word, "oracle": o.name, "value": v.value.value, "evidence": v.evidence,
            "certificate": v.certificate.to_json() if v.certificate is not None else None}
    _emit(args, f"{v.value}" + (f" ({v.evidence})" if v.evidence else ""), data)
    return EXIT_UNKNOWN if v.value is Verdict.UNKNOWN else EXIT_OK


# --- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--presentation", help="presentation JSON file, or preset:NAME "
                        f"({', '.join(PRESETS)})")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--budget-nodes", type=int, help="search nodes per certificate search")
    common.add_argument("--budget-factors", type=int, help="max relator conjugates per certificate")
    common.add_argument("--budget-conj", type=int, help="max conjugator length")
    common.add_argument("--budget-imax", type=int, help="largest phi-power of relators used")

    ap = argparse.ArgumentParser(prog="hnnkit", description="Ascending HNN extension toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common], help="freely reduce a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("endo", parents=[common], help="apply phi^k")
    s.add_argument("word")
    s.add_argument("-k", type=int, default=1)
    s.set_defaults(func=cmd_endo)

    s = sub.add_parser("canon", parents=[common], help="canonical form t^n w t^-m")
    s.add_argument("word")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("equal", parents=[common], help="decide u = v in G")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("classify", parents=[common], help="region of a vertex relative to D(N,M)")
    s.add_argument("word")
    s.add_argument("-N", type=int, default=0)
    s.add_argument("-M", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ball", parents=[common], help="export a Cayley complex ball")
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--label", help="annotate regions for N,M")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("depth", parents=[common], help="check or scan depth witnesses")
    s.add_argument("word", nargs="?")
    s.add_argument("-n", type=int)
    s.add_argument("--scan", action="store_true")
    s.add_argument("--len-max", type=int, default=8)
    s.add_argument("--n-max", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_depth)

    s = sub.add_parser("homotopy", parents=[common], help="build or verify homotopy certificates")
    s.add_argument("action", choices=["push", "string", "corner", "trivialize", "fp", "verify"])
    s.add_argument("target", help="generator, path, loop, or certificate file for verify")
    s.add_argument("--rows", type=int, default=4)
    s.add_argument("--at", default="", help="start vertex as a word")
    s.add_argument("--interval", help="corner level interval lo,hi")
    s.add_argument("--cap", type=int, help="level cap for trivialize")
    s.add_argument("-N", type=int, default=0)
    s.add_argument("-M", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_homotopy)

    s = sub.add_parser("oracle", parents=[common], help="ask a base oracle")
    s.add_argument("word")
    s.add_argument("--name", help="free, grigorchuk or bs:m,n (instead of a presentation)")
    s.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, IllFormedInput, ContractViolation, DiagramContractError, PresentationIncompatible,
            UnsupportedPresentation, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Undecided as exc:
        print(f"Unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
