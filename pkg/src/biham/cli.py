"""Command line front end.

Subcommands: check (degree conditions), hamilton (constructive search),
oracle (exhaustive verdict), gen (instance generators), survey (exhaustive
scan at small sizes), verify (certificate check).  Digraphs are read from a
file path or stdin ("-"), in either the text or JSON serialization.

Exit codes: 0 for a definitive answer, 2 for unknown (size above the
oracle cap), 1 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .conditions import (
    check_condition_A,
    check_condition_M,
    check_half_degrees,
    check_min_degree,
    check_woodall_bipartite,
)
from .digraph import (
    BipartiteDigraph,
    DigraphError,
    ParseError,
    dumps_json,
    dumps_text,
    loads_auto,
    vertex_id,
)
from .compat import CapExceeded
from .generators import (
    gen_complete,
    gen_Dak,
    gen_Dprime,
    gen_random,
    gen_random_M,
    gen_Tak,
)
from .hamilton import ORACLE_CAP, find_hamiltonian_cycle, oracle_cycle, verify_cycle
from .matching import Matching, find_complete_matching
from .report import render_figures, survey, write_survey_csv


def _load(path: str) -> BipartiteDigraph:
    if path == "-":
        return loads_auto(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return loads_auto(fh.read())


def _cap_type(value: str) -> int:
    cap = int(value)
    if not 2 <= cap <= ORACLE_CAP:
        raise argparse.ArgumentTypeError(
            f"cap must be between 2 and {ORACLE_CAP}, got {cap}")
    return cap


def _labels(d: BipartiteDigraph, vs) -> list[str]:
    return [d.label(v) for v in vs]


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# check


def cmd_check(args: argparse.Namespace) -> int:
    d = _load(args.digraph)
    reports = [
        check_condition_M(d),
        check_min_degree(d),
        check_half_degrees(d),
        check_woodall_bipartite(d),
    ]
    m = find_complete_matching(d)
    rep_a = check_condition_A(d, m) if isinstance(m, Matching) else None

    if args.format == "json":
        checks = []
        for rep in reports + ([rep_a] if rep_a is not None else []):
            checks.append({
                "name": rep.name,
                "satisfied": rep.satisfied,
                "bound": rep.bound,
                "witness": _labels(d, rep.witness) if rep.witness else None,
                "witness_sum": rep.witness_sum,
            })
        if rep_a is None:
            checks.append({"name": "A", "satisfied": None,
                           "skipped": "no complete matching"})
        print(json.dumps({"a": d.a, "arcs": d.arc_count, "checks": checks},
                         indent=2, sort_keys=True))
        return 0

    print(f"a: {d.a}")
    print(f"arcs: {d.arc_count}")
    for rep in reports:
        if rep.satisfied:
            print(f"{rep.name}: satisfied (bound {rep.bound})")
        else:
            wit = ",".join(_labels(d, rep.witness))
            print(f"{rep.name}: violated (bound {rep.bound}) "
                  f"witness {wit} sum {rep.witness_sum}")
    if rep_a is None:
        print("A: skipped (no complete matching)")
    elif rep_a.satisfied:
        print(f"A: satisfied (bound {rep_a.bound})")
    else:
        wit = ",".join(_labels(d, rep_a.witness))
        print(f"A: violated (bound {rep_a.bound}) witness {wit} "
              f"sum {rep_a.witness_sum}")
    return 0


# ---------------------------------------------------------------------------
# hamilton


def cmd_hamilton(args: argparse.Namespace) -> int:
    d = _load(args.digraph)
    mode = "heuristic" if args.heuristic else "exact"
    res = find_hamiltonian_cycle(d, mode=mode, use_oracle=not args.no_fallback,
                                 cap=args.cap)
    dec = res.decomposition
    if args.format == "json":
        out = {
            "hamiltonian": res.hamiltonian,
            "method": res.method,
            "merges": res.merges,
            "note": res.note,
            "cycle": _labels(d, res.certificate.vertices) if res.certificate else None,
            "matching": ([[d.label(x), d.label(y)] for x, y in res.matching.pairs]
                         if res.matching else None),
            "stages": ([{"length": c.length} for c in dec.cycles] if dec else None),
            "leftover": (_labels(d, dec.leftover) if dec and dec.leftover else None),
            "terminal": ({
                "target": res.terminal.target,
                "missing": [[d.label(u), d.label(v)] for u, v in res.terminal.missing],
                "note": res.terminal.note,
            } if res.terminal else None),
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        verdict = {True: "yes", False: "no", None: "unknown"}[res.hamiltonian]
        print(f"hamiltonian: {verdict}")
        print(f"method: {res.method} ({res.merges} merges)")
        if res.certificate:
            print("cycle: " + " ".join(_labels(d, res.certificate.vertices)))
        if res.matching:
            print("matching: " + " ".join(f"{d.label(x)}->{d.label(y)}"
                                          for x, y in res.matching.pairs))
        if dec:
            lens = " ".join(str(c.length) for c in dec.cycles)
            left = " ".join(_labels(d, dec.leftover)) if dec.leftover else "none"
            print(f"decomposition: cycles {lens}; leftover {left}")
        if res.terminal:
            print(f"stuck: {res.terminal.note}")
        if res.note and not (res.terminal and res.note == res.terminal.note):
            print(f"note: {res.note}")
    return 0 if res.hamiltonian is not None else 2


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(args: argparse.Namespace) -> int:
    d = _load(args.digraph)
    try:
        cycle = oracle_cycle(d, cap=args.cap)
    except CapExceeded as e:
        if args.format == "json":
            print(json.dumps({"hamiltonian": None, "note": str(e)},
                             indent=2, sort_keys=True))
        else:
            print("hamiltonian: unknown")
            print(f"note: {e}")
        return 2
    if args.format == "json":
        print(json.dumps({
            "hamiltonian": cycle is not None,
            "cycle": _labels(d, cycle) if cycle else None,
        }, indent=2, sort_keys=True))
    else:
        print(f"hamiltonian: {'yes' if cycle else 'no'}")
        if cycle:
            print("cycle: " + " ".join(_labels(d, cycle)))
    return 0


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args: argparse.Namespace) -> int:
    fam = args.family
    if fam in ("dak", "tak") and args.k is None:
        print(f"error: family {fam} needs --k", file=sys.stderr)
        return 1
    if fam == "complete":
        d = gen_complete(args.a)
    elif fam == "dprime":
        d = gen_Dprime(args.a)
    elif fam == "dak":
        d = gen_Dak(args.a, args.k)
    elif fam == "tak":
        d = gen_Tak(args.a, args.k)
    elif fam == "random":
        d = gen_random(args.a, args.seed, args.density)
    else:
        d = gen_random_M(args.a, args.seed, args.budget)
    text = dumps_json(d) if args.format == "json" else dumps_text(d)
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# survey


def cmd_survey(args: argparse.Namespace) -> int:
    progress = None if args.quiet else sys.stderr
    detail_fh = open(args.detail, "w", newline="", encoding="utf-8") if args.detail else None
    try:
        result = survey(args.a, detail=detail_fh, progress=progress)
    finally:
        if detail_fh is not None:
            detail_fh.close()
    if args.out is None:
        write_survey_csv(result, sys.stdout)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_survey_csv(result, fh)
    if args.figures:
        for path in render_figures(result, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    d = _load(args.digraph)
    with open(args.certificate, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("cycle")
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        print("error: certificate must be a JSON list of vertex labels, "
              'or an object with a "cycle" list', file=sys.stderr)
        return 1
    seq = [vertex_id(s, d.a) for s in data]
    ok = verify_cycle(d, seq)
    if args.format == "json":
        print(json.dumps({"valid": ok}, sort_keys=True))
    else:
        print(f"valid: {'yes' if ok else 'no'}")
    return 0


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="biham",
        description="Degree conditions and hamiltonian cycles in balanced "
                    "bipartite digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")

    sp = sub.add_parser("check", help="run the degree condition checkers")
    sp.add_argument("digraph", help="digraph file, or - for stdin")
    add_format(sp)

    sp = sub.add_parser("hamilton", help="find a hamiltonian cycle constructively")
    sp.add_argument("digraph", help="digraph file, or - for stdin")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="exact longest-cycle stage search (default)")
    mode.add_argument("--heuristic", action="store_true",
                      help="path-extension stage search")
    sp.add_argument("--no-fallback", action="store_true",
                    help="never fall back to the exhaustive oracle")
    sp.add_argument("--cap", type=_cap_type, default=ORACLE_CAP,
                    help=f"oracle size cap in vertices (max {ORACLE_CAP})")
    add_format(sp)

    sp = sub.add_parser("oracle", help="exhaustive hamiltonicity verdict")
    sp.add_argument("digraph", help="digraph file, or - for stdin")
    sp.add_argument("--cap", type=_cap_type, default=ORACLE_CAP,
                    help=f"size cap in vertices (max {ORACLE_CAP})")
    add_format(sp)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("family",
                    choices=("complete", "dprime", "dak", "tak", "random", "random-m"))
    sp.add_argument("--a", type=int, required=True, help="class size")
    sp.add_argument("--k", type=int, help="block parameter for dak and tak")
    sp.add_argument("--seed", type=int, default=0, help="rng seed for random families")
    sp.add_argument("--density", type=float, default=0.5,
                    help="arc probability for the random family")
    sp.add_argument("--budget", type=int, default=None,
                    help="deletion budget for random-m (default: thin until stuck)")
    sp.add_argument("--out", help="write to this file instead of stdout")
    add_format(sp)

    sp = sub.add_parser("survey", help="scan all digraphs at a small class size")
    sp.add_argument("--a", type=int, default=3, help="class size, at most 3")
    sp.add_argument("--out", help="summary CSV path (default stdout)")
    sp.add_argument("--detail", help="also write one CSV row per digraph here")
    sp.add_argument("--figures", help="also render PNG figures into this directory")
    sp.add_argument("--quiet", action="store_true", help="no progress on stderr")

    sp = sub.add_parser("verify", help="check a cycle certificate against a digraph")
    sp.add_argument("digraph", help="digraph file, or - for stdin")
    sp.add_argument("certificate",
                    help='JSON certificate: a list of labels or {"cycle": [...]}')
    add_format(sp)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    handlers = {
        "check": cmd_check,
        "hamilton": cmd_hamilton,
        "oracle": cmd_oracle,
        "gen": cmd_gen,
        "survey": cmd_survey,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, DigraphError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as e:
        print(f"error: bad JSON certificate: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
