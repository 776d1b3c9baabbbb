"""Linking, bridging, accommodation, the preference cascade, acceptability."""
import random

import pytest

from qdrt.drs import (
    Alpha,
    Drs,
    Impl,
    MarkerFactory,
    Neg,
    Pred,
    alpha_equal,
    free_markers,
    is_proper,
    iter_boxes,
    sub_drs_at,
)
from qdrt.errors import ResolutionError
from qdrt.resolution import (
    Reading,
    acceptable,
    accommodate,
    alpha_occurrences,
    bridge,
    link,
    resolve_all,
    resolve_one,
    suitable_mappings,
)

from generators import random_resolvable
from paper_fixtures import (
    barkeeper_resolved,
    barkeeper_unresolved,
    celebrity_resolved,
    celebrity_unresolved,
    ent,
    king_resolved,
    king_unresolved,
    playground_resolved,
    playground_unresolved,
)


def first_alpha(root):
    return alpha_occurrences(root)[0]


def pronoun_alpha(root):
    return next(p for p in alpha_occurrences(root) if not sub_drs_at(root, p).conditions)


def definite_alpha(root):
    return next(p for p in alpha_occurrences(root) if sub_drs_at(root, p).conditions)


class TestSuitability:
    def test_celebrity_antecedent_is_suitable(self):
        x, y = ent(1), ent(2)
        k_alpha = Drs((y,), (Pred("celebrity", (y,)),))
        candidate = Drs((x,), (Pred("celebrity", (x,)), Pred("I-invite", (x,))))
        (m,) = suitable_mappings(k_alpha, candidate)
        assert m.as_dict() == {y: x}

    def test_mismatching_conditions_unsuitable(self):
        x, y = ent(1), ent(2)
        k_alpha = Drs((y,), (Pred("barkeeper", (y,)),))
        candidate = Drs((x,), (Pred("bar", (x,)), Pred("I-go-to", (x,))))
        assert suitable_mappings(k_alpha, candidate) == ()

    def test_coercively_accommodated_material_is_suitable(self):
        from qdrt.drs import coercive_accommodation
        from paper_fixtures import bar_quale

        x, y, z = ent(1), ent(2), ent(3)
        bar_box = Drs((x,), (Pred("bar", (x,)), bar_quale(x, z), Pred("I-go-to", (x,))))
        (surfaced,) = coercive_accommodation(bar_box)
        k_alpha = Drs((y,), (Pred("barkeeper", (y,)),))
        (m,) = suitable_mappings(k_alpha, surfaced)
        assert m.as_dict() == {y: z}

    def test_pronoun_suits_every_marker_of_matching_sort(self):
        from qdrt.drs import Marker

        z = ent(9)
        k_alpha = Drs((z,), ())
        candidate = Drs((ent(1), Marker("event", 2)), (Pred("party", (ent(1),)),))
        mappings = suitable_mappings(k_alpha, candidate)
        assert [m.as_dict()[z] for m in mappings] == [ent(1)]


class TestLink:
    def test_celebrity_links_to_antecedent(self):
        root = celebrity_unresolved()
        (outcome,) = link(first_alpha(root), root)
        assert alpha_equal(outcome.drs, celebrity_resolved())
        assert outcome.step.mechanism == "Link"

    def test_barkeeper_cannot_link(self):
        root = barkeeper_unresolved()
        assert link(first_alpha(root), root) == ()

    def test_king_pronoun_links_to_party(self):
        root = king_unresolved()
        outcomes = link(pronoun_alpha(root), root)
        assert len(outcomes) == 1
        (outcome,) = outcomes
        eqs = [
            c for _p, box in iter_boxes(outcome.drs)
            for c in box.conditions if c.__class__.__name__ == "Eq"
        ]
        assert len(eqs) == 1

    def test_link_only_touches_the_host_universe(self):
        rng = random.Random(2)
        for _ in range(200):
            f = MarkerFactory()
            root, kind = random_resolvable(rng, f)
            if kind != "link":
                continue
            path = first_alpha(root)
            host_path = path[:-1]
            for outcome in link(path, root):
                for p, box in iter_boxes(root):
                    try:
                        after = sub_drs_at(outcome.drs, p)
                    except Exception:
                        continue
                    if p != host_path:
                        assert set(box.universe) <= set(after.universe)


class TestBridge:
    def test_barkeeper_bridges_via_bar_quale(self):
        root = barkeeper_unresolved()
        outcomes = bridge(first_alpha(root), root)
        assert len(outcomes) == 1
        assert alpha_equal(outcomes[0].drs, barkeeper_resolved())

    def test_playground_cannot_bridge(self):
        root = playground_unresolved()
        assert bridge(first_alpha(root), root) == ()

    def test_bridge_not_consulted_when_link_succeeds(self):
        root = celebrity_unresolved()
        outcomes = resolve_one(first_alpha(root), root)
        assert {o.step.mechanism for o in outcomes} == {"Link"}


class TestAccommodate:
    def test_king_accommodates_globally(self):
        root = king_unresolved()
        outcomes = accommodate(definite_alpha(root), root)
        assert outcomes
        assert outcomes[0].step.site_path == ()
        resolved = outcomes[0].drs
        assert any(
            c.name == "king-of-france"
            for c in resolved.conditions if isinstance(c, Pred)
        )

    def test_playground_global_accommodation(self):
        root = playground_unresolved()
        outcomes = accommodate(first_alpha(root), root)
        assert outcomes[0].step.site_path == ()
        assert alpha_equal(outcomes[0].drs, playground_resolved())

    def test_free_variable_introduction_filtered(self):
        # the anaphor mentions a marker bound only inside the consequent;
        # accommodating it at the outermost site would free that marker
        x, y, w = ent(1), ent(2), ent(3)
        ant = Drs((x,), (Pred("p", (x,)),))
        cons = Drs((w,), (Pred("q", (w,)),
                          Alpha(Drs((y,), (Pred("r", (y,)), Pred("rel", (y, w))))),))
        root = Drs((), (Impl(ant, cons),))
        outcomes = accommodate(first_alpha(root), root)
        assert outcomes
        for o in outcomes:
            assert o.step.site_path != ()
            assert free_markers(o.drs) <= free_markers(root)


class TestResolveOne:
    def test_gating_on_paper_examples(self):
        for root, mechanism in (
            (celebrity_unresolved(), "Link"),
            (barkeeper_unresolved(), "Bridge"),
            (king_unresolved(), "Accommodate"),
        ):
            outcomes = resolve_one(definite_alpha(root), root)
            assert {o.step.mechanism for o in outcomes} == {mechanism}

    def test_gating_property_on_generated_configurations(self):
        rng = random.Random(42)
        for _ in range(200):
            f = MarkerFactory()
            root, _kind = random_resolvable(rng, f)
            path = first_alpha(root)
            linked = link(path, root)
            outcomes = resolve_one(path, root)
            if linked:
                assert outcomes == linked
                assert all(o.step.mechanism == "Link" for o in outcomes)

    def test_pronoun_without_antecedent_fails(self):
        z = ent(1)
        root = Drs((), (Alpha(Drs((z,), ())), Pred("waits", (z,))))
        with pytest.raises(ResolutionError):
            resolve_one(first_alpha(root), root)


class TestResolveAll:
    def test_king_of_france_reading(self):
        readings = resolve_all(king_unresolved())
        preferred = readings[0]
        assert alpha_equal(preferred.resolved, king_resolved())
        by_mechanism = {s.mechanism for s in preferred.steps}
        assert by_mechanism == {"Accommodate", "Link"}

    def test_order_setting_does_not_change_preferred_reading(self):
        for order in ("pronouns-last", "pronouns-first", "textual"):
            readings = resolve_all(king_unresolved(), order=order)
            assert alpha_equal(readings[0].resolved, king_resolved())

    def test_already_proper_gives_identity_reading(self):
        k = celebrity_resolved()
        (reading,) = resolve_all(k)
        assert reading.resolved == k
        assert reading.steps == ()

    def test_alpha_count_strictly_decreases(self):
        rng = random.Random(8)
        for _ in range(500):
            f = MarkerFactory()
            root, _kind = random_resolvable(rng, f)
            n_before = len(alpha_occurrences(root))
            outcomes = resolve_one(first_alpha(root), root)
            for o in outcomes:
                assert len(alpha_occurrences(o.drs)) == n_before - 1

    def test_readings_are_proper(self):
        rng = random.Random(21)
        for _ in range(100):
            f = MarkerFactory()
            root, _kind = random_resolvable(rng, f)
            for reading in resolve_all(root):
                assert is_proper(reading.resolved)

    def test_felicity_note_for_bridgeable_accommodation(self):
        root = playground_unresolved()
        readings = resolve_all(root, bridgeable={"barkeeper"})
        assert readings[0].felicity_notes
        bridged = resolve_all(barkeeper_unresolved(), bridgeable={"barkeeper"})
        assert not bridged[0].felicity_notes

    def test_trace_format(self):
        readings = resolve_all(barkeeper_unresolved())
        (line,) = readings[0].trace_lines()
        assert line.startswith("alpha@")
        assert "-> Bridge @" in line
        assert "[m: " in line


class TestAcceptable:
    def test_king_of_france_resolution_acceptable(self):
        assert acceptable(king_resolved(), ())

    def test_contradictory_accommodation_rejected(self):
        y = ent(1)
        inner = Drs((y,), (Pred("king", (y,)),))
        candidate = Drs((y,), (Pred("king", (y,)), Neg(Drs((), (Pred("king", (y,)),)))))
        assert not acceptable(candidate, ())
        assert acceptable(inner, ())

    def test_zero_bound_is_degenerate_true(self, caplog):
        y = ent(1)
        candidate = Drs((y,), (Pred("king", (y,)), Neg(Drs((), (Pred("king", (y,)),)))))
        import logging

        with caplog.at_level(logging.WARNING, logger="qdrt.resolution"):
            assert acceptable(candidate, (), bound=0)
        assert any("degenerate" in r.message for r in caplog.records)

    def test_uninformative_accommodation_rejected(self):
        x = ent(1)
        baseline = Drs((x,), (Pred("king", (x,)),))
        candidate = Drs((x,), (Pred("king", (x,)),))
        assert not acceptable(candidate, (), baseline=baseline)
