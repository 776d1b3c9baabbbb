"""Canonical linear form: round trips, whitespace insensitivity, stability."""
import pytest

from qdrt.drs import Drs, Eq, Impl, Marker, Neg, Disj, Alpha, Pred, Qualia, QualiaRole
from qdrt.errors import ParseError
from qdrt.grammar import process_discourse
from qdrt.linear import parse_drs, parse_term, write_drs, write_term
from qdrt.terms import E, Fn, LambdaDrs, Leaf, T

from paper_fixtures import (
    barkeeper_resolved,
    barkeeper_unresolved,
    begins_book_sentence,
    celebrity_unresolved,
    ent,
    ev,
    king_resolved,
)


class TestRoundTrip:
    @pytest.mark.parametrize("fixture", [
        celebrity_unresolved,
        barkeeper_unresolved,
        barkeeper_resolved,
        king_resolved,
        lambda: begins_book_sentence("write"),
        lambda: Drs(),
        lambda: Drs((ent(1),), (Disj(Drs((), (Pred("p", (ent(1),)),)),
                                     Drs((), (Neg(Drs((), (Pred("q", (ent(1),)),))),))),)),
    ])
    def test_drs_round_trip(self, fixture):
        d = fixture()
        assert parse_drs(write_drs(d)) == d

    def test_lambda_payload_round_trip(self):
        d = begins_book_sentence("read")
        text = write_drs(d)
        assert "lam(" in text
        assert parse_drs(text) == d

    def test_pipeline_output_round_trips(self, lexicon):
        state = process_discourse(
            ["When I go to a bar, the barkeeper always throws me out."], lexicon
        )
        assert parse_drs(write_drs(state.main_drs)) == state.main_drs

    def test_term_round_trip(self):
        x, e = ent(1), ev(2)
        term = LambdaDrs(
            ((x, E), (e, Fn(E, T))),
            Leaf(Drs((x,), (Pred("p", (x,)),))),
        )
        assert parse_term(write_term(term)) == term


class TestFormat:
    def test_whitespace_insensitive(self):
        text = " drs( [ x:1 , e:2 ] , [ pred( rel , [ x:1 , e:2 ] ) , eq( x:1 , x:1 ) ] ) "
        d = parse_drs(text)
        assert d == Drs((ent(1), ev(2)),
                        (Pred("rel", (ent(1), ev(2))), Eq(ent(1), ent(1))))

    def test_writer_is_canonical_and_stable(self):
        d = barkeeper_resolved()
        assert write_drs(d) == write_drs(parse_drs(write_drs(d)))
        assert " " not in write_drs(d)

    def test_marker_serialization(self):
        assert write_drs(Drs((Marker("event", 3),), ())) == "drs([e:3],[])"

    def test_qualia_roles_spelled_out(self):
        d = Drs((), (Qualia(QualiaRole.TELIC, Drs((ent(1),), ())),))
        assert "qualia(telic," in write_drs(d)

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_drs("drs([x:1],[pred(p,[x:1])")
        with pytest.raises(ParseError):
            parse_drs("drs([y:1],[])")
        with pytest.raises(ParseError):
            parse_drs("drs([],[]) trailing")
