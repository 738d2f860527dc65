"""Command-line front end.

Relation files are line oriented::

    # Comments start with '#'
    universe: 1 2 3
    pair: 1 2
    pair: 3 3

Exactly one ``universe:`` line is required; ``pair:`` lines may appear in any
order and repeated pairs are harmless.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .closures import CLOSURES, closure, e_equals_ts_condition, equivalence_closure
from .definable import (
    DEFAULT_MAX_POWERSET,
    SetFamily,
    definable_family_fast,
    equivalence_classes,
    naive_family_masks,
    same_definable_family,
)
from .oracle import verify_claim
from .relcore import (
    Relation,
    RelationError,
    Subset,
    Universe,
    is_equivalence,
    is_reflexive,
    is_serial,
    is_symmetric,
    is_transitive,
)
from .rough import lower, pred_set, succ_set, upper, v_set

ENV_MAX_POWERSET = "ROUGHREL_MAX_POWERSET"


class ParseError(RelationError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    """Split a line into ``(token, column)`` pairs, columns 1-based."""
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def parse_relation_file(text: str) -> Relation:
    universe_line = None
    labels: list[tuple[str, int]] = []
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if head == "universe:":
            if universe_line is not None:
                raise ParseError(f"second universe line (first on line {universe_line})", lineno, col)
            universe_line = lineno
            labels = toks[1:]
            if not labels:
                raise ParseError("universe line lists no elements", lineno, col)
            seen = {}
            for lab, c in labels:
                if lab in seen:
                    raise ParseError(f"duplicate label {lab!r}", lineno, c)
                seen[lab] = c
        elif head == "pair:":
            if len(toks) != 3:
                raise ParseError("pair line needs exactly two labels", lineno, col)
            pairs.append((lineno, toks[1], toks[2]))
        else:
            raise ParseError(f"expected 'universe:' or 'pair:', got {head!r}", lineno, col)
    if universe_line is None:
        raise ParseError("missing universe line", 1)
    u = Universe(tuple(lab for lab, _ in labels))
    rows = [0] * u.size
    for lineno, (a, ca), (b, cb) in pairs:
        for lab, c in ((a, ca), (b, cb)):
            if lab not in u:
                raise ParseError(f"unknown label {lab!r}", lineno, c)
        rows[u.index(a)] |= 1 << u.index(b)
    return Relation(u, tuple(rows))


def format_relation(r: Relation) -> str:
    lines = ["universe: " + " ".join(r.universe.labels)]
    lines += [f"pair: {a} {b}" for a, b in r.label_pairs()]
    return "\n".join(lines) + "\n"


def relation_to_json(r: Relation) -> dict:
    return {"universe": list(r.universe.labels), "pairs": [list(p) for p in r.label_pairs()]}


def family_to_json(fam: SetFamily) -> dict:
    return {"sets": fam.label_sets()}


def _set_text(labels: Sequence[str]) -> str:
    return "{" + ",".join(labels) + "}"


def _read(path: str) -> Relation:
    if path == "-":
        return parse_relation_file(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_relation_file(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.args[0]}", exc.line, exc.column) from None


def _parse_set(u: Universe, spec: str) -> Subset:
    labels = [s.strip() for s in spec.split(",") if s.strip()]
    return Subset.from_labels(u, labels)


def to_dot(r: Relation, name: str = "R") -> str:
    """Graphviz digraph of ``r``, clustering elements by blocks of ``e(r)``."""
    out = [f'digraph "{name}" {{']
    blocks = equivalence_classes(equivalence_closure(r))
    for i, block in enumerate(blocks.blocks):
        out.append(f"  subgraph cluster_{i} {{")
        out.append('    style=dashed; label="";')
        for lab in block.labels():
            out.append(f'    "{lab}";')
        out.append("  }")
    for a, b in r.label_pairs():
        out.append(f'  "{a}" -> "{b}";')
    out.append("}")
    return "\n".join(out) + "\n"


# --- subcommands ------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_props(args) -> int:
    r = _read(args.file)
    props = {
        "reflexive": is_reflexive(r),
        "symmetric": is_symmetric(r),
        "transitive": is_transitive(r),
        "serial": is_serial(r),
        "equivalence": is_equivalence(r),
        "e_equals_ts": e_equals_ts_condition(r),
    }
    text = "\n".join(f"{k}: {str(v).lower()}" for k, v in props.items())
    _emit(args, props, text)
    return 0


def cmd_closure(args) -> int:
    r = closure(_read(args.file), args.kind)
    _emit(args, relation_to_json(r), format_relation(r))
    return 0


def cmd_approx(args) -> int:
    r = _read(args.file)
    xs = _parse_set(r.universe, args.set)
    result = lower(r, xs) if args.op == "lower" else upper(r, xs)
    _emit(args, {"set": result.labels()}, _set_text(result.labels()))
    return 0


def cmd_neigh(args) -> int:
    r = _read(args.file)
    xs = _parse_set(r.universe, args.set)
    fn = {"succ": succ_set, "pred": pred_set, "v": v_set}[args.op]
    result = fn(r, xs)
    _emit(args, {"set": result.labels()}, _set_text(result.labels()))
    return 0


def cmd_definable(args) -> int:
    r = _read(args.file)
    if args.method == "fast":
        if args.family != "both":
            raise RelationError("the fast method only computes the definable family (--both)")
        fam = definable_family_fast(r)
    else:
        inner, outer, both = naive_family_masks(r, args.max_powerset)
        masks = {"inner": inner, "outer": outer, "both": both}[args.family]
        fam = SetFamily(r.universe, tuple(masks))
    text = "\n".join(_set_text(s) for s in fam.label_sets())
    _emit(args, family_to_json(fam), text if fam.masks else "(empty family)")
    return 0


def cmd_check_equal(args) -> int:
    r1, r2 = _read(args.file1), _read(args.file2)
    report = same_definable_family(r1, r2)
    payload = report.to_dict()
    lines = [f"equal: {str(report.equal).lower()}", f"reason: {report.reason}"]
    if report.witness is not None:
        lines.append(f"witness: {report.witness}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classes(args) -> int:
    r = _read(args.file)
    p = equivalence_classes(r)
    blocks = p.label_blocks()
    _emit(args, {"blocks": blocks}, "\n".join(_set_text(b) for b in blocks))
    return 0


def cmd_verify(args) -> int:
    report = verify_claim(args.claim, args.n, args.mode, args.trials, args.seed)
    if args.json:
        print(report.to_json())
    else:
        print(report.summary())
        for f in report.failures:
            print("  " + json.dumps(f, sort_keys=True))
    return 0


def cmd_dot(args) -> int:
    r = _read(args.file)
    if args.kind != "none":
        r = closure(r, args.kind)
    sys.stdout.write(to_dot(r, args.kind if args.kind != "none" else "R"))
    return 0


def _default_max_powerset() -> int:
    raw = os.environ.get(ENV_MAX_POWERSET)
    if raw is None:
        return DEFAULT_MAX_POWERSET
    try:
        return int(raw)
    except ValueError:
        raise RelationError(f"{ENV_MAX_POWERSET} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    common.add_argument("--max-powerset", type=int, default=argparse.SUPPRESS, metavar="N",
                        help=f"largest universe for powerset enumeration (env {ENV_MAX_POWERSET})")

    parser = argparse.ArgumentParser(prog="roughrel", parents=[common],
                                     description="Rough-set tools for finite binary relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("props", parents=[common], help="relation properties")
    p.add_argument("file")
    p.set_defaults(func=cmd_props)

    kinds = sorted(CLOSURES)
    p = sub.add_parser("closure", parents=[common], help="compute a closure")
    p.add_argument("--kind", required=True, choices=kinds)
    p.add_argument("file")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("approx", parents=[common], help="lower/upper approximation of a set")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lower", dest="op", action="store_const", const="lower")
    g.add_argument("--upper", dest="op", action="store_const", const="upper")
    p.add_argument("--set", required=True, help="comma-separated labels (may be empty)")
    p.add_argument("file")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("neigh", parents=[common], help="neighbourhood union of a set")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--succ", dest="op", action="store_const", const="succ")
    g.add_argument("--pred", dest="op", action="store_const", const="pred")
    g.add_argument("--v", dest="op", action="store_const", const="v")
    p.add_argument("--set", required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_neigh)

    p = sub.add_parser("definable", parents=[common], help="inner/outer/definable set family")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--inner", dest="family", action="store_const", const="inner")
    g.add_argument("--outer", dest="family", action="store_const", const="outer")
    g.add_argument("--both", dest="family", action="store_const", const="both")
    p.add_argument("--method", choices=["naive", "fast"], default="naive")
    p.add_argument("file")
    p.set_defaults(func=cmd_definable)

    p = sub.add_parser("check-equal", parents=[common], help="do two relations share a definable family?")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_check_equal)

    p = sub.add_parser("classes", parents=[common], help="quotient set of an equivalence relation")
    p.add_argument("file")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", parents=[common], help="sweep a registered claim")
    p.add_argument("--claim", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", parents=[common], help="Graphviz output")
    p.add_argument("--kind", choices=["none", *kinds], default="none")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    try:
        if not hasattr(args, "max_powerset"):
            args.max_powerset = _default_max_powerset()
        return args.func(args)
    except (RelationError, OSError) as exc:
        print(f"roughrel: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
