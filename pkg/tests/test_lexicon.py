"""Builtin fragment contents and the lexicon file format."""
import pytest

from qdrt.composition import beta_reduce, type_of
from qdrt.drs import Alpha, Drs, MarkerFactory, Pred, Qualia, QualiaRole, iter_boxes
from qdrt.errors import LexiconError
from qdrt.lexicon import (
    builtin_paper_fragment,
    instantiate,
    load_lexicon,
    serialize_lexicon,
)
from qdrt.terms import App, E, Fn, LambdaDrs, Leaf, T, Var

REQUIRED_FORMS = [
    "a", "the", "every", "john", "book", "write", "read", "begin", "pres",
    "bar", "barkeeper", "playground", "celebrity", "party", "king-of-france",
    "invite", "go-to", "give", "throw-out", "attend", "come", "always",
    "never", "when", "i", "he", "it", "me",
]


def _alpha_count(term) -> int:
    def in_drs(d):
        n = 0
        for c in d.conditions:
            if isinstance(c, Alpha):
                n += 1 + in_drs(c.inner)
            else:
                from qdrt.drs import child_boxes

                for _b, child in child_boxes(c):
                    n += in_drs(child)
        return n

    def in_term(t):
        if isinstance(t, Leaf):
            return in_drs(t.drs)
        if hasattr(t, "operands"):
            return sum(in_term(op) for op in t.operands) + (1 if t.kind == "alpha" else 0)
        if hasattr(t, "body"):
            return in_term(t.body)
        if hasattr(t, "fn"):
            return in_term(t.fn) + in_term(t.arg)
        if hasattr(t, "left"):
            return in_term(t.left) + in_term(t.right)
        return 0

    return in_term(term)


class TestBuiltinFragment:
    def test_contains_the_fragment(self, lexicon):
        for form in REQUIRED_FORMS:
            assert lexicon.has(form), form

    def test_the_is_a_presupposition_trigger(self, lexicon):
        entry = lexicon.lookup("the")
        assert entry.category == "Det"
        assert _alpha_count(entry.semantics) == 1

    def test_john_introduces_alpha_without_qualia(self, lexicon):
        entry = lexicon.lookup("john")
        assert entry.category == "PN"
        assert _alpha_count(entry.semantics) == 1
        from qdrt.composition import qualia_access

        assert qualia_access(entry.semantics) == ()

    def test_book_has_four_qualia_roles(self, lexicon):
        entry = lexicon.lookup("book")
        body = entry.semantics.body.drs
        roles = [c.role for c in body.conditions if isinstance(c, Qualia)]
        assert set(roles) == set(QualiaRole)
        agentive = next(c for c in body.conditions
                        if isinstance(c, Qualia) and c.role is QualiaRole.AGENTIVE)
        telic = next(c for c in body.conditions
                     if isinstance(c, Qualia) and c.role is QualiaRole.TELIC)
        assert "write" in {p.name for p in agentive.payload.body.drs.conditions}
        assert "read" in {p.name for p in telic.payload.body.drs.conditions}

    def test_bar_carries_barkeeper_quale_playground_does_not(self, lexicon):
        bar = lexicon.lookup("bar").semantics.body.drs
        quale = next(c for c in bar.conditions if isinstance(c, Qualia))
        assert quale.role is QualiaRole.CONSTITUTIVE
        names = {c.name for c in quale.payload.conditions}
        assert names == {"barkeeper", "of"}
        playground = lexicon.lookup("playground").semantics.body.drs
        assert not any(isinstance(c, Qualia) for c in playground.conditions)

    def test_every_entry_type_checks(self, lexicon):
        for form in lexicon.forms:
            for entry in lexicon.lookup_all(form):
                assert type_of(entry.semantics) == entry.signature

    def test_indefinite_and_universal_have_no_alpha(self, lexicon):
        assert _alpha_count(lexicon.lookup("a").semantics) == 0
        assert _alpha_count(lexicon.lookup("every").semantics) == 0

    def test_instantiation_freshens_markers(self, lexicon):
        factory = MarkerFactory()
        a = instantiate(lexicon.lookup("book"), factory)
        b = instantiate(lexicon.lookup("book"), factory)
        assert not (a.all_markers() & b.all_markers())

    def test_bridgeable_predicates_include_barkeeper(self, lexicon):
        assert "barkeeper" in lexicon.bridgeable_predicates()
        assert "king-of-france" not in lexicon.bridgeable_predicates()


class TestLoadLexicon:
    def test_empty_source_is_builtin(self, lexicon):
        assert load_lexicon("") == lexicon

    def test_bar_transcription(self, lexicon):
        src = "noun bar { qualia constitutive { z | barkeeper(z), of(z,self) } }"
        lex = load_lexicon(src)
        entry = lex.lookup("bar")
        assert entry.origin == "file"
        builtin_bar = lexicon.lookup("bar")
        assert entry.semantics == builtin_bar.semantics

    def test_undeclared_predicate_rejected(self):
        with pytest.raises(LexiconError):
            load_lexicon("noun pub { qualia telic { z | quaff(z) } }")

    def test_arity_mismatch_rejected(self):
        with pytest.raises(LexiconError):
            load_lexicon("noun pub { qualia telic { z | of(z) } }")

    def test_declared_predicate_accepted(self):
        lex = load_lexicon(
            "predicate quaff 1\nnoun pub { qualia telic { z | quaff(z) } }"
        )
        assert lex.arity["quaff"] == 1
        assert lex.has("pub")

    def test_file_wins_on_conflict(self, lexicon):
        lex = load_lexicon("noun bar { }")
        bar = lex.lookup("bar").semantics.body.drs
        assert not any(isinstance(c, Qualia) for c in bar.conditions)

    def test_parse_error_carries_position(self):
        with pytest.raises(LexiconError) as exc:
            load_lexicon("noun bar { qualia nonsense { z | barkeeper(z) } }")
        assert exc.value.line == 1

    def test_only_nouns_take_qualia(self):
        with pytest.raises(LexiconError):
            load_lexicon("pn mary { qualia telic { z | barkeeper(z) } }")

    def test_new_categories(self):
        lex = load_lexicon(
            "pn mary { }\nv_trans greet { }\npron she { }\nadv often { }\n"
            "v_asp finish { }"
        )
        assert lex.lookup("mary").category == "PN"
        assert lex.lookup("greet").signature == Fn(E, Fn(E, T))
        assert lex.lookup("she").category == "Pron"
        assert lex.lookup("finish").category == "V_asp"


class TestRoundTrip:
    def test_serialize_reparses_to_equal_lexicon(self):
        src = (
            "predicate quaff 1\n"
            "noun pub { qualia telic { z | quaff(z) } "
            "qualia constitutive { z | of(z,self) } }\n"
            "pn mary { }\n"
            "v_trans greet { }\n"
        )
        lex = load_lexicon(src)
        dumped = serialize_lexicon(lex)
        assert load_lexicon(dumped) == lex

    def test_builtin_serializes_empty(self, lexicon):
        assert serialize_lexicon(lexicon) == ""
