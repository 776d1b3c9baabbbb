"""Anaphora resolution: linking, bridging, accommodation.

Resolution consumes alpha conditions one at a time, preferring linking to
bridging and bridging to accommodation.  Linking equates the anaphor with
suitable accessible markers; bridging first surfaces qualia content of an
accessible box by coercive accommodation and links into that; accommodation
inserts the anaphoric material itself at an accessible site, global sites
first, filtered by acceptability.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .drs import (
    Alpha,
    Drs,
    DrsPath,
    Eq,
    Marker,
    Pred,
    child_boxes,
    coercive_accommodation,
    contains_alpha,
    edit_at_paths,
    free_markers,
    is_proper,
    iter_boxes,
    merge,
    rename_markers,
    sub_drs_at,
    subordinating_boxes,
    substitute,
    substitute_many,
)
from .errors import PathError, ResolutionError
from .model import consistent, entails

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 4
_MAX_DEPTH = 64


@dataclass(frozen=True)
class SuitabilityMapping:
    """A witness that one DRS suits another: a total map from the anaphor's
    markers into the candidate's universe under which every anaphor condition
    is already among the candidate's conditions."""

    assignment: tuple[tuple[Marker, Marker], ...]

    def as_dict(self) -> dict[Marker, Marker]:
        return dict(self.assignment)

    def __str__(self) -> str:
        return ",".join(f"{x}->{y}" for x, y in self.assignment)


@dataclass(frozen=True)
class ResolutionStep:
    alpha_path: DrsPath
    mechanism: str  # "Link" | "Bridge" | "Accommodate"
    site_path: DrsPath
    mapping: SuitabilityMapping | None
    alpha_loc: str = ""
    site_loc: str = ""

    def trace_line(self) -> str:
        line = f"alpha@{self.alpha_loc} -> {self.mechanism} @{self.site_loc}"
        if self.mapping is not None and self.mapping.assignment:
            line += f" [m: {self.mapping}]"
        return line


@dataclass(frozen=True)
class Outcome:
    """One way of resolving a single alpha condition."""

    drs: Drs
    step: ResolutionStep


@dataclass(frozen=True)
class Reading:
    """A fully resolved DRS together with how it was obtained."""

    resolved: Drs
    steps: tuple[ResolutionStep, ...]
    felicity_notes: tuple[str, ...] = ()

    def trace_lines(self) -> list[str]:
        return [s.trace_line() for s in self.steps]


def path_str(root: Drs, path: DrsPath) -> str:
    """Stable, human-readable rendering of a path, e.g. ``impl0.cons/alpha0``."""
    if not path:
        return "top"
    parts = []
    box = root
    for cond, branch in path:
        idx = box.conditions.index(cond)
        parts.append(f"{type(cond).__name__.lower()}{idx}.{branch}")
        box = dict(child_boxes(cond))[branch]
    return "/".join(parts)


def suitable_mappings(k_alpha: Drs, candidate: Drs) -> tuple[SuitabilityMapping, ...]:
    """All sort-respecting maps witnessing that ``candidate`` suits ``k_alpha``.

    An empty-restrictor anaphor (a pronoun) is suited by every single
    candidate marker of matching sort.
    """
    universe = k_alpha.universe
    out: list[SuitabilityMapping] = []
    for combo in product(candidate.universe, repeat=len(universe)):
        if any(x.sort != y.sort for x, y in zip(universe, combo)):
            continue
        mapping = dict(zip(universe, combo))
        renamed = rename_markers(Drs((), k_alpha.conditions), mapping)
        if not set(renamed.conditions) <= set(candidate.conditions):
            continue
        sm = SuitabilityMapping(tuple(zip(universe, combo)))
        if sm not in out:
            out.append(sm)
    return tuple(out)


def _alpha_parts(root: Drs, alpha_path: DrsPath) -> tuple[Drs, DrsPath, Alpha]:
    if not alpha_path or not isinstance(alpha_path[-1][0], Alpha):
        raise PathError("path does not address an alpha condition's payload")
    k_a = sub_drs_at(root, alpha_path)
    return k_a, alpha_path[:-1], alpha_path[-1][0]


def _sites(root: Drs, alpha_path: DrsPath, global_first: bool) -> list[DrsPath]:
    sites = list(subordinating_boxes(root, alpha_path))
    sites.sort(key=lambda p: len(p) if global_first else -len(p))
    return sites


def _linked_host(host: Drs, alpha_cond: Alpha, k_a: Drs, m: SuitabilityMapping) -> Drs:
    conditions = [c for c in host.conditions if c != alpha_cond]
    conditions.extend(k_a.conditions)
    conditions.extend(Eq(x, y) for x, y in m.assignment)
    return Drs(host.universe + k_a.universe, conditions)


def _overlap(p: DrsPath, q: DrsPath) -> bool:
    return p[: len(q)] == q or q[: len(p)] == p


def link(alpha_path: DrsPath, root: Drs) -> tuple[Outcome, ...]:
    """Resolve to suitable accessible markers; the anaphor's content moves
    into its host box together with the witnessing equations."""
    k_a, host_path, alpha_cond = _alpha_parts(root, alpha_path)
    host = sub_drs_at(root, host_path)
    out: list[Outcome] = []
    for site in _sites(root, alpha_path, global_first=False):
        candidate = sub_drs_at(root, site)
        for m in suitable_mappings(k_a, candidate):
            k3 = _linked_host(host, alpha_cond, k_a, m)
            res = substitute(root, host_path, k3)
            step = ResolutionStep(alpha_path, "Link", site, m,
                                  path_str(root, alpha_path), path_str(root, site))
            if all(o.drs != res or o.step.mapping != m for o in out):
                out.append(Outcome(res, step))
    return tuple(out)


def bridge(alpha_path: DrsPath, root: Drs) -> tuple[Outcome, ...]:
    """Resolve to coercively accommodated material of an accessible box.

    Each output applies both substitutions at once: the accessible box is
    replaced by its coercive accommodation, and the anaphor's host is
    replaced as in linking.  Site and host must be distinct boxes.
    """
    k_a, host_path, alpha_cond = _alpha_parts(root, alpha_path)
    host = sub_drs_at(root, host_path)
    out: list[Outcome] = []
    for site in _sites(root, alpha_path, global_first=False):
        if _overlap(site, host_path):
            continue
        k4 = sub_drs_at(root, site)
        for k1 in coercive_accommodation(k4):
            for m in suitable_mappings(k_a, k1):
                k3 = _linked_host(host, alpha_cond, k_a, m)
                res = substitute_many(root, {site: k1, host_path: k3})
                step = ResolutionStep(alpha_path, "Bridge", site, m,
                                      path_str(root, alpha_path), path_str(root, site))
                if all(o.drs != res or o.step.mapping != m for o in out):
                    out.append(Outcome(res, step))
    return tuple(out)


def accommodate(
    alpha_path: DrsPath, root: Drs, *, bound: int = DEFAULT_BOUND
) -> tuple[Outcome, ...]:
    """Insert the anaphoric material itself at an accessible site.

    Sites are tried outermost first; outputs that introduce new free markers,
    inconsistency, or no information are filtered out.
    """
    k_a, host_path, alpha_cond = _alpha_parts(root, alpha_path)

    def drop_alpha(d: Drs) -> Drs:
        return Drs(d.universe, [c for c in d.conditions if c != alpha_cond])

    out: list[Outcome] = []
    for site in _sites(root, alpha_path, global_first=True):
        if site == host_path:
            edits = {host_path: lambda d: merge(drop_alpha(d), k_a)}
        else:
            edits = {host_path: drop_alpha, site: lambda d: merge(d, k_a)}
        res = edit_at_paths(root, edits)
        baseline = edit_at_paths(root, {host_path: drop_alpha})
        if not acceptable(res, site, before=root, baseline=baseline, bound=bound):
            continue
        step = ResolutionStep(alpha_path, "Accommodate", site, None,
                              path_str(root, alpha_path), path_str(root, site))
        if all(o.drs != res for o in out):
            out.append(Outcome(res, step))
    return tuple(out)


def acceptable(
    candidate: Drs,
    site_path: DrsPath | None = None,
    *,
    before: Drs | None = None,
    baseline: Drs | None = None,
    bound: int = DEFAULT_BOUND,
) -> bool:
    """Van der Sandt style acceptability for a resolution result.

    No new free markers (no free markers at all when there is no ``before``
    reference), consistency, and informativity relative to ``baseline`` (the
    context with the anaphor simply dropped).  Consistency and informativity
    are decided by bounded model search once the candidate is proper; with
    pending anaphors they are deferred to later steps.  A non-positive bound
    makes the model-theoretic checks vacuous.
    """
    if bound <= 0:
        logger.warning("domain bound %s: acceptability degenerates to true", bound)
        return True
    cand_free = free_markers(candidate)
    if before is not None:
        if not cand_free <= free_markers(before):
            return False
    elif cand_free:
        return False
    if contains_alpha(candidate) or cand_free:
        return True
    if not consistent(candidate, bound):
        return False
    if baseline is not None and is_proper(baseline) and entails(baseline, candidate, bound):
        return False
    return True


def resolve_one(
    alpha_path: DrsPath, root: Drs, *, bound: int = DEFAULT_BOUND
) -> tuple[Outcome, ...]:
    """Resolve one alpha condition, gated strictly: all link results if any,
    else all bridge results if any, else all acceptable accommodations.

    Pronouns (empty restrictors) only ever link; a pronoun without a link
    target is a resolution failure.
    """
    k_a, _host, _cond = _alpha_parts(root, alpha_path)
    linked = link(alpha_path, root)
    if linked:
        return linked
    if not k_a.conditions:
        raise ResolutionError(
            f"pronoun at {path_str(root, alpha_path)} has no accessible antecedent"
        )
    bridged = bridge(alpha_path, root)
    if bridged:
        return bridged
    accommodated = accommodate(alpha_path, root, bound=bound)
    if accommodated:
        return accommodated
    raise ResolutionError(
        f"anaphoric condition at {path_str(root, alpha_path)} cannot be resolved"
    )


def alpha_occurrences(root: Drs) -> tuple[DrsPath, ...]:
    """Paths of all alpha payloads, in pre-order (textual order)."""
    out: list[DrsPath] = []
    for path, box in iter_boxes(root):
        for cond in box.conditions:
            if isinstance(cond, Alpha):
                out.append(path + ((cond, "inner"),))
    return tuple(out)


def _ordered_alphas(root: Drs, order: str) -> tuple[DrsPath, ...]:
    occ = alpha_occurrences(root)
    if order == "textual":
        return occ
    pronouns = tuple(p for p in occ if not sub_drs_at(root, p).conditions)
    others = tuple(p for p in occ if p not in pronouns)
    if order == "pronouns-last":
        return others + pronouns
    if order == "pronouns-first":
        return pronouns + others
    raise ValueError(f"unknown resolution order {order!r}")


def resolve_all(
    root: Drs,
    *,
    bound: int = DEFAULT_BOUND,
    order: str = "pronouns-last",
    bridgeable: Iterable[str] = frozenset(),
) -> tuple[Reading, ...]:
    """All readings: the fixpoint of resolve_one over the alpha conditions.

    Alphas are consumed in textual order with pronouns last by default (the
    ``order`` switch exists to show the result does not depend on it).
    Readings come back preference-ordered: the first one follows the
    preferred choice at every step.  Accommodating a definite whose
    restrictor the lexicon lists as qualia content of another word is flagged
    in the reading's felicity notes.
    """
    bridgeable = frozenset(bridgeable)
    readings: list[Reading] = []
    last_error: ResolutionError | None = None

    def rec(current: Drs, steps: list[ResolutionStep], notes: list[str], depth: int) -> None:
        nonlocal last_error
        if depth > _MAX_DEPTH:
            raise ResolutionError("resolution did not terminate")
        alphas = _ordered_alphas(current, order)
        if not alphas:
            if not is_proper(current):
                last_error = ResolutionError("resolution left free markers")
                return
            reading = Reading(current, tuple(steps), tuple(dict.fromkeys(notes)))
            if all(r.resolved != reading.resolved or r.steps != reading.steps
                   for r in readings):
                readings.append(reading)
            return
        target = alphas[0]
        payload = sub_drs_at(current, target)
        try:
            outcomes = resolve_one(target, current, bound=bound)
        except ResolutionError as exc:
            last_error = exc
            return
        for o in outcomes:
            extra = list(notes)
            if o.step.mechanism == "Accommodate":
                hits = sorted(
                    {c.name for c in payload.conditions if isinstance(c, Pred)}
                    & bridgeable
                )
                for name in hits:
                    extra.append(
                        f"accommodated '{name}', which the lexicon supplies as "
                        f"implicit qualia content of another word; a bridge was "
                        f"expected but none was available"
                    )
            rec(o.drs, steps + [o.step], extra, depth + 1)

    rec(root, [], [], 0)
    if not readings:
        raise last_error or ResolutionError("no reading found")
    return tuple(readings)
