"""Command-line front end.

Words use the grammar  n=<int>; token*  with tokens s<i>, t<j>, r<i> and a
trailing apostrophe for inverses (r is self-inverse and never primed).
Diagrams are read from JSON files.  All outputs are deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import braid, diagram, hecke, skein
from .braid import BraidWord, parse_word


def _fail(module: str, message: str) -> int:
    print(f"{module}: {message}", file=sys.stderr)
    return 1


def _word(text: str) -> BraidWord:
    return parse_word(text)


def _hecke_token(tok: str) -> tuple[str, int, int]:
    exp = 1
    if tok.endswith("'"):
        exp = -1
        tok = tok[:-1]
    if len(tok) < 2 or tok[0] not in ("T", "X") or not tok[1:].isdigit():
        raise ValueError(f"bad Hecke token {tok!r}; expected T<i>, X<j>, optionally primed")
    return tok[0], int(tok[1:]), exp


def _hecke_product(tokens: list[str], n: int | None) -> hecke.HeckeElement:
    gens = [_hecke_token(t) for t in tokens]
    if n is None:
        n = max(
            (idx + 1 if kind == "T" else idx for kind, idx, _ in gens), default=1
        )
    e = hecke.HeckeElement.unit(n)
    for kind, idx, exp in reversed(gens):
        e = hecke.mul_gen_left((kind, idx, exp), e)
    return e


def _load_diagram(path: str) -> diagram.DlDiagram:
    if path.lstrip().startswith("n="):
        return diagram.closure_diagram(_word(path))
    return diagram.load_diagram(path)


def cmd_trace(args) -> int:
    t = skein.trace(_word(args.word), args.normalization)
    print(t)
    if args.hp:
        print(skein.hp_reduce(skein.chebyshev_coeffs(t)))
    return 0


def cmd_bracket(args) -> int:
    print(skein.bracket(_word(args.word)))
    return 0


def cmd_hecke_nf(args) -> int:
    print(_hecke_product(args.tokens, args.strands))
    return 0


def cmd_phi(args) -> int:
    print(hecke.phi(_word(args.word)))
    return 0


def cmd_mul(args) -> int:
    a, b = hecke.phi(_word(args.left)), hecke.phi(_word(args.right))
    print(hecke.mul(a, b))
    return 0


def cmd_gauss(args) -> int:
    g = diagram.gauss_data(_load_diagram(args.input))
    print(json.dumps(diagram.gauss_to_json(g), indent=None if args.json else 2))
    return 0


def cmd_braid_of_diagram(args) -> int:
    w = diagram.braid_from_diagram(_load_diagram(args.input))
    print(w.pretty() if args.pretty else str(w))
    return 0


def cmd_markov_search(args) -> int:
    src, dst = _word(args.source), _word(args.target)
    bounds = braid.SearchBounds(
        max_strands=args.max_strands, max_length=args.max_length
    )
    moves = braid.markov_search(src, dst, args.depth, bounds)
    if moves is None:
        print("not-found within bounds")
        return 0
    for mv in moves:
        print(mv.describe())
    return 0


def cmd_hp_normal_form(args) -> int:
    print(skein.hp_normal_form(_word(args.word), args.normalization))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlbraid",
        description="Exact toolkit for braids with double lines and their closures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def norm_flag(p):
        p.add_argument(
            "--normalization",
            choices=("framed", "paper"),
            default="framed",
            help="writhe-power normalization of the trace",
        )

    p = sub.add_parser("trace", help="Markov trace of a closed word")
    p.add_argument("word")
    norm_flag(p)
    p.add_argument("--hp", action="store_true", help="also print the torsion normal form")
    p.set_defaults(fn=cmd_trace, module="skein")

    p = sub.add_parser("bracket", help="unresolved bracket state sum")
    p.add_argument("word")
    p.set_defaults(fn=cmd_bracket, module="skein")

    p = sub.add_parser("hecke-nf", help="normal form of a product of T/X tokens")
    p.add_argument("tokens", nargs="+", metavar="TOKEN")
    p.add_argument("--strands", "-n", type=int, default=None)
    p.set_defaults(fn=cmd_hecke_nf, module="hecke")

    p = sub.add_parser("phi", help="Hecke image of a classical word")
    p.add_argument("word")
    p.set_defaults(fn=cmd_phi, module="hecke")

    p = sub.add_parser("mul", help="product of the Hecke images of two words")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_mul, module="hecke")

    p = sub.add_parser("gauss", help="Gauss data of a diagram file or word closure")
    p.add_argument("input", help="diagram JSON path, or a word starting with n=")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(fn=cmd_gauss, module="diagram")

    p = sub.add_parser("braid-of-diagram", help="braiding process output word")
    p.add_argument("input", help="diagram JSON path, or a word starting with n=")
    p.add_argument("--pretty", action="store_true", help="unicode rendering")
    p.set_defaults(fn=cmd_braid_of_diagram, module="diagram")

    p = sub.add_parser("markov-search", help="search for a dl-Markov move sequence")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--max-strands", type=int, default=5)
    p.add_argument("--max-length", type=int, default=12)
    p.set_defaults(fn=cmd_markov_search, module="braid")

    p = sub.add_parser("hp-normal-form", help="torsion normal form of the trace")
    p.add_argument("word")
    norm_flag(p)
    p.set_defaults(fn=cmd_hp_normal_form, module="skein")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError, AssertionError) as exc:
        return _fail(args.module, str(exc))


if __name__ == "__main__":
    sys.exit(main())
