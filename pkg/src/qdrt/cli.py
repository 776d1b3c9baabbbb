"""Command line driver: resolve discourses, trace derivations, verify truth.

Exit codes: 0 success, 1 parse or composition failure, 2 resolution failure,
3 lexicon error, 4 model format error.  Results go to stdout; traces and
felicity warnings go to stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import boxes, linear
from .drs import Drs
from .errors import (
    CompositionError,
    LexiconError,
    ModelFormatError,
    ParseError,
    QdrtError,
    ResolutionError,
)
from .grammar import (
    Derivation,
    load_discourse,
    process_discourse,
    sentence_drs_variants,
)
from .lexicon import builtin_paper_fragment, load_lexicon
from .model import parse_model, verify
from .resolution import Reading


def _render(drs: Drs, style: str) -> str:
    return boxes.render_drs(drs) if style == "box" else linear.write_drs(drs)


def _load_lexicon(path: str | None):
    if path is None:
        return builtin_paper_fragment()
    return load_lexicon(Path(path).read_text(encoding="utf-8"))


def _print_reading(index: int, reading: Reading, style: str, trace: bool) -> None:
    print(f"reading {index}:")
    print(_render(reading.resolved, style))
    if trace:
        for line in reading.trace_lines():
            print(f"  {line}", file=sys.stderr)
    for note in reading.felicity_notes:
        print(f"warning: {note}", file=sys.stderr)


def cmd_resolve(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    sentences = load_discourse(Path(args.discourse).read_text(encoding="utf-8"))
    policy = "all" if args.all_readings else "best"
    state = process_discourse(sentences, lexicon, policy, bound=args.domain_bound)
    for i, (text, _chosen) in enumerate(state.history):
        print(f"# {text}")
        for j, reading in enumerate(state.alternatives[i], start=1):
            _print_reading(j, reading, args.render, args.trace)
    print("main DRS:")
    print(_render(state.main_drs, args.render))
    return 0


def _derivation_trace(node: Derivation) -> list[str]:
    lines: list[str] = []

    def walk(n: Derivation) -> None:
        for child in n.children:
            walk(child)
        if n.step == "lexical":
            return
        if n.step.startswith("pred:"):
            lines.append(f"[{n.label}] lexicalized predicate {n.step[5:]!r}")
            return
        functor, argument = n.children[0], n.children[1]
        op = "apply" if n.step == "apply" else n.step
        lines.append(f"[{n.label}] {op}:")
        lines.append(f"  functor  {linear.write_term(functor.semantics)}")
        lines.append(f"  argument {linear.write_term(argument.semantics)}")
        if n.quale is not None:
            lines.append(f"  quale    {linear.write_term(n.quale)}")
        lines.append(f"  result   {linear.write_term(n.semantics)}")

    walk(node)
    return lines


def cmd_derive(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    variants = sentence_drs_variants(args.sentence, lexicon)
    for i, (derivation, drs) in enumerate(variants, start=1):
        coerced = [
            f"{n.step.split(':', 1)[1]}"
            for n in _walk_nodes(derivation)
            if n.step.startswith("coerced:")
        ]
        label = f" (coerced via {', '.join(coerced)})" if coerced else ""
        print(f"sentence-DRS {i}{label}:")
        print(_render(drs, args.render))
        if args.trace:
            for line in _derivation_trace(derivation):
                print(line, file=sys.stderr)
    return 0


def _walk_nodes(node: Derivation):
    yield node
    for child in node.children:
        yield from _walk_nodes(child)


def cmd_verify(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    model = parse_model(Path(args.model).read_text(encoding="utf-8"))
    sentences = load_discourse(Path(args.discourse).read_text(encoding="utf-8"))
    policy = "all" if args.all_readings else "best"
    state = process_discourse(sentences, lexicon, policy, bound=args.domain_bound)
    if not state.history:
        print(f"reading 1: {'TRUE' if verify(state.main_drs, model) else 'FALSE'}")
        return 0
    for j, reading in enumerate(state.alternatives[-1], start=1):
        value = verify(reading.resolved, model)
        print(f"reading {j}: {'TRUE' if value else 'FALSE'}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdrt",
        description="Discourse semantics with qualia-driven coercion and bridging",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_model=False):
        p.add_argument("--render", choices=("box", "linear"), default="box")
        p.add_argument("--trace", action="store_true", help="print step traces to stderr")
        p.add_argument("--lexicon", metavar="FILE", help="extra lexicon file")
        p.add_argument("--all-readings", action="store_true")
        p.add_argument("--domain-bound", type=int, default=4, metavar="N",
                       help="domain size bound for acceptability checks")

    resolve = sub.add_parser("resolve", help="resolve a discourse file")
    resolve.add_argument("discourse", help="discourse file, one sentence per line")
    common(resolve)
    resolve.set_defaults(func=cmd_resolve)

    derive = sub.add_parser("derive", help="derive a single sentence")
    derive.add_argument("sentence")
    common(derive)
    derive.set_defaults(func=cmd_derive)

    verify_p = sub.add_parser("verify", help="verify a discourse against a model")
    verify_p.add_argument("discourse")
    verify_p.add_argument("--model", required=True, metavar="FILE")
    common(verify_p)
    verify_p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LexiconError as exc:
        print(f"lexicon error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, CompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResolutionError as exc:
        print(f"resolution failure: {exc}", file=sys.stderr)
        return 2
    except ModelFormatError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QdrtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
