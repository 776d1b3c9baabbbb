"""The shipped reference files stay loadable and in sync."""
from pathlib import Path

from qdrt.cli import main
from qdrt.lexicon import builtin_paper_fragment, load_lexicon
from qdrt.linear import write_term, write_type

DOCS = Path(__file__).resolve().parent.parent / "docs"


def test_builtin_reference_is_fresh():
    lex = builtin_paper_fragment()
    text = (DOCS / "builtin-fragment.md").read_text(encoding="utf-8")
    for form in lex.forms:
        for e in lex.lookup_all(form):
            assert f"### `{e.form}` ({e.category}, type `{write_type(e.signature)}`)" in text
            assert write_term(e.semantics) in text
    for name, arity in lex.arity.items():
        assert f"- `{name}/{arity}`" in text


def test_example_lexicon_loads_and_bridges(capsys):
    lex_path = DOCS / "examples" / "keeper.lexicon"
    lexicon = load_lexicon(lex_path.read_text(encoding="utf-8"))
    assert "keeper" in lexicon.bridgeable_predicates()


def test_example_discourses_resolve(capsys):
    for name in ("bridging", "linking", "accommodation", "infelicitous",
                 "two-sentences", "coercion"):
        assert main(["resolve", str(DOCS / "examples" / f"{name}.txt")]) == 0
        capsys.readouterr()


def test_example_models_verify(capsys):
    discourse = DOCS / "examples" / "linking.txt"
    assert main(["verify", str(discourse),
                 "--model", str(DOCS / "examples" / "celebrity.model")]) == 0
    assert "TRUE" in capsys.readouterr().out
    assert main(["verify", str(discourse),
                 "--model", str(DOCS / "examples" / "celebrity-false.model")]) == 0
    assert "FALSE" in capsys.readouterr().out
