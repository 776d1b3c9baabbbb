"""Typed lambda terms over DRSs.

Lexical semantics and intermediate composition results are terms: DRS leaves,
typed variables, applications, merges, and lambda abstractions.  Variables at
type e are discourse markers; higher-typed variables (properties, event
types) reuse the Marker type as their name.  Fully reduced sentence
semantics is a bare DRS leaf; agentive/telic qualia payloads stay lambda
abstractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .drs import Drs, Marker, Qualia, child_boxes, rename_markers


class SemType:
    """Base class for semantic types."""

    __slots__ = ()


@dataclass(frozen=True)
class AtomType(SemType):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fn(SemType):
    arg: SemType
    result: SemType

    def __str__(self) -> str:
        return f"<{self.arg},{self.result}>"


#: Entities and events (both inhabit type e).
E = AtomType("e")
#: Truth values / propositions.
T = AtomType("t")

#: Properties <e,t>.
ET = Fn(E, T)
#: Event types as used by aspectual verbs: <e,<e,t>>.
EET = Fn(E, ET)


class Term:
    """Base class for lambda terms."""

    __slots__ = ()

    # --- protocol used by the drs module on qualia payloads -------------

    def all_markers(self) -> frozenset[Marker]:
        raise NotImplementedError

    def free_markers_under(self, bound: frozenset[Marker]) -> frozenset[Marker]:
        raise NotImplementedError

    def contains_alpha(self) -> bool:
        raise NotImplementedError

    def rename_markers(self, mapping: Mapping[Marker, Marker]) -> "Term":
        raise NotImplementedError

    def bound_markers_in_order(self) -> list[Marker]:
        raise NotImplementedError

    def shape(self) -> object:
        raise NotImplementedError

    def match_term(self, other, fwd, rev, bind, match_drs) -> Iterator[tuple]:
        raise NotImplementedError


def _drs_all_markers(d: Drs) -> frozenset[Marker]:
    from .drs import all_markers

    return all_markers(d)


def _drs_free_under(d: Drs, bound: frozenset[Marker]) -> frozenset[Marker]:
    from .drs import _free_markers_under

    return _free_markers_under(d, bound)


def _drs_bound_in_order(d: Drs) -> list[Marker]:
    from .drs import _bound_in_order

    return _bound_in_order(d)


@dataclass(frozen=True)
class Leaf(Term):
    """A DRS constant; condition payloads may still hold unreduced terms."""

    drs: Drs

    def all_markers(self):
        out = set(_drs_all_markers(self.drs))
        for t in _leaf_payload_terms(self.drs):
            out |= t.all_markers()
        return frozenset(out)

    def free_markers_under(self, bound):
        return _drs_free_under(self.drs, bound)

    def contains_alpha(self):
        from .drs import contains_alpha

        return contains_alpha(self.drs)

    def rename_markers(self, mapping):
        return Leaf(rename_markers(self.drs, mapping))

    def bound_markers_in_order(self):
        return _drs_bound_in_order(self.drs)

    def shape(self):
        from .drs import SORT_ENTITY

        u_ent = sum(1 for m in self.drs.universe if m.sort == SORT_ENTITY)
        return ("leaf", u_ent, len(self.drs.universe) - u_ent, len(self.drs.conditions))

    def match_term(self, other, fwd, rev, bind, match_drs):
        if isinstance(other, Leaf):
            yield from match_drs(self.drs, other.drs, fwd, rev)


def _leaf_payload_terms(d: Drs) -> Iterator[Term]:
    for cond in d.conditions:
        if isinstance(cond, Qualia) and not isinstance(cond.payload, Drs):
            yield cond.payload
        else:
            for _branch, child in child_boxes(cond):
                yield from _leaf_payload_terms(child)


@dataclass(frozen=True)
class Var(Term):
    """A typed variable occurrence; the name is a discourse marker."""

    marker: Marker
    type: SemType

    def all_markers(self):
        return frozenset((self.marker,))

    def free_markers_under(self, bound):
        return frozenset() if self.marker in bound else frozenset((self.marker,))

    def contains_alpha(self):
        return False

    def rename_markers(self, mapping):
        return Var(mapping.get(self.marker, self.marker), self.type)

    def bound_markers_in_order(self):
        return []

    def shape(self):
        return ("var", str(self.type))

    def match_term(self, other, fwd, rev, bind, match_drs):
        if isinstance(other, Var) and other.type == self.type:
            st = bind(self.marker, other.marker, fwd, rev)
            if st is not None:
                yield st


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term

    def all_markers(self):
        return self.fn.all_markers() | self.arg.all_markers()

    def free_markers_under(self, bound):
        return self.fn.free_markers_under(bound) | self.arg.free_markers_under(bound)

    def contains_alpha(self):
        return self.fn.contains_alpha() or self.arg.contains_alpha()

    def rename_markers(self, mapping):
        return App(self.fn.rename_markers(mapping), self.arg.rename_markers(mapping))

    def bound_markers_in_order(self):
        return self.fn.bound_markers_in_order() + self.arg.bound_markers_in_order()

    def shape(self):
        return ("app", self.fn.shape(), self.arg.shape())

    def match_term(self, other, fwd, rev, bind, match_drs):
        if isinstance(other, App):
            for f2, r2 in self.fn.match_term(other.fn, fwd, rev, bind, match_drs):
                yield from self.arg.match_term(other.arg, f2, r2, bind, match_drs)


@dataclass(frozen=True)
class Merge(Term):
    """Pending DRS merge; evaluated once both operands are lambda-free."""

    left: Term
    right: Term

    def all_markers(self):
        return self.left.all_markers() | self.right.all_markers()

    def free_markers_under(self, bound):
        return self.left.free_markers_under(bound) | self.right.free_markers_under(bound)

    def contains_alpha(self):
        return self.left.contains_alpha() or self.right.contains_alpha()

    def rename_markers(self, mapping):
        return Merge(self.left.rename_markers(mapping), self.right.rename_markers(mapping))

    def bound_markers_in_order(self):
        return self.left.bound_markers_in_order() + self.right.bound_markers_in_order()

    def shape(self):
        return ("oplus", self.left.shape(), self.right.shape())

    def match_term(self, other, fwd, rev, bind, match_drs):
        if isinstance(other, Merge):
            for f2, r2 in self.left.match_term(other.left, fwd, rev, bind, match_drs):
                yield from self.right.match_term(other.right, f2, r2, bind, match_drs)


@dataclass(frozen=True)
class CondTerm(Term):
    """A delayed complex condition whose sub-boxes are still terms.

    ``kind`` is ``"alpha"`` or ``"impl"``; once every operand reduces to a
    DRS leaf the node collapses to a one-condition DRS.  Templates such as
    presupposition triggers need this because their alpha payload mentions a
    property variable that is only supplied during composition.
    """

    kind: str
    operands: tuple[Term, ...]

    _ARITY = {"alpha": 1, "impl": 2}

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if self.kind not in self._ARITY:
            raise ValueError(f"unknown condition kind: {self.kind!r}")
        if len(self.operands) != self._ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {self._ARITY[self.kind]} operand(s)")

    def all_markers(self):
        out: frozenset[Marker] = frozenset()
        for t in self.operands:
            out |= t.all_markers()
        return out

    def free_markers_under(self, bound):
        out: frozenset[Marker] = frozenset()
        for t in self.operands:
            out |= t.free_markers_under(bound)
        return out

    def contains_alpha(self):
        return self.kind == "alpha" or any(t.contains_alpha() for t in self.operands)

    def rename_markers(self, mapping):
        return CondTerm(self.kind, tuple(t.rename_markers(mapping) for t in self.operands))

    def bound_markers_in_order(self):
        out: list[Marker] = []
        for t in self.operands:
            out.extend(t.bound_markers_in_order())
        return out

    def shape(self):
        return ("condterm", self.kind, tuple(t.shape() for t in self.operands))

    def match_term(self, other, fwd, rev, bind, match_drs):
        if isinstance(other, CondTerm) and other.kind == self.kind:

            def go(i, fwd, rev):
                if i == len(self.operands):
                    yield (fwd, rev)
                    return
                for st in self.operands[i].match_term(other.operands[i], fwd, rev, bind, match_drs):
                    yield from go(i + 1, *st)

            yield from go(0, fwd, rev)


@dataclass(frozen=True)
class LambdaDrs(Term):
    """A DRS abstracted over a sequence of typed parameters."""

    params: tuple[tuple[Marker, SemType], ...]
    body: Term

    def __post_init__(self):
        object.__setattr__(self, "params", tuple((m, t) for m, t in self.params))
        names = [m for m, _t in self.params]
        if len(set(names)) != len(names):
            raise ValueError("lambda parameters must be pairwise distinct")

    def all_markers(self):
        return frozenset(m for m, _t in self.params) | self.body.all_markers()

    def free_markers_under(self, bound):
        return self.body.free_markers_under(bound | frozenset(m for m, _t in self.params))

    def contains_alpha(self):
        return self.body.contains_alpha()

    def rename_markers(self, mapping):
        params = tuple((mapping.get(m, m), t) for m, t in self.params)
        return LambdaDrs(params, self.body.rename_markers(mapping))

    def bound_markers_in_order(self):
        return [m for m, _t in self.params] + self.body.bound_markers_in_order()

    def shape(self):
        return ("lam", tuple(str(t) for _m, t in self.params), self.body.shape())

    def match_term(self, other, fwd, rev, bind, match_drs):
        if not isinstance(other, LambdaDrs) or len(other.params) != len(self.params):
            return
        if tuple(t for _m, t in other.params) != tuple(t for _m, t in self.params):
            return
        state = (fwd, rev)
        for (m, _t1), (n, _t2) in zip(self.params, other.params):
            state = bind(m, n, *state)
            if state is None:
                return
        yield from self.body.match_term(other.body, *state, bind, match_drs)
