"""Discourse representation structures and their algebra.

A DRS is a pair of a universe (discourse markers) and a set of conditions.
Both compare as sets, but insertion order is preserved so that rendering and
resolution order are deterministic.  All values are immutable; every operation
is a pure function returning new structures.

Sub-DRS occurrences are addressed by paths (sequences of (condition, branch)
steps) rather than by structural matching, because structurally equal
sub-DRSs may occur at two different positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping

from .errors import PathError

SORT_ENTITY = "entity"
SORT_EVENT = "event"
_SORT_TAGS = {SORT_ENTITY: "x", SORT_EVENT: "e"}
_TAG_SORTS = {tag: sort for sort, tag in _SORT_TAGS.items()}


@dataclass(frozen=True, order=True)
class Marker:
    """A discourse marker: a variable over entities or events (both type e)."""

    sort: str
    index: int

    def __post_init__(self):
        if self.sort not in _SORT_TAGS:
            raise ValueError(f"unknown marker sort: {self.sort!r}")

    @property
    def tag(self) -> str:
        return _SORT_TAGS[self.sort]

    def __str__(self) -> str:
        return f"{self.tag}:{self.index}"

    def __repr__(self) -> str:
        return f"Marker({self.sort!r}, {self.index})"


def marker_from_text(text: str) -> Marker:
    """Parse the canonical ``tag:index`` form, e.g. ``x:3`` or ``e:1``."""
    tag, sep, idx = text.partition(":")
    if not sep or tag not in _TAG_SORTS or not idx.isdigit():
        raise ValueError(f"not a marker: {text!r}")
    return Marker(_TAG_SORTS[tag], int(idx))


class MarkerFactory:
    """Supplies globally fresh markers for one discourse derivation.

    Freshness is managed by a single monotone counter, so markers from
    different sentences of the same discourse can never collide and merge
    needs no renaming.
    """

    def __init__(self, start: int = 1):
        self._next = start

    def fresh(self, sort: str) -> Marker:
        m = Marker(sort, self._next)
        self._next += 1
        return m

    def entity(self) -> Marker:
        return self.fresh(SORT_ENTITY)

    def event(self) -> Marker:
        return self.fresh(SORT_EVENT)


class QualiaRole(Enum):
    FORMAL = "formal"
    CONSTITUTIVE = "constitutive"
    TELIC = "telic"
    AGENTIVE = "agentive"

    def __str__(self) -> str:
        return self.value


#: Deterministic preference order used when coercion results are collected.
QUALIA_PREFERENCE = (
    QualiaRole.AGENTIVE,
    QualiaRole.TELIC,
    QualiaRole.FORMAL,
    QualiaRole.CONSTITUTIVE,
)


class Condition:
    """Base class for DRS conditions."""

    __slots__ = ()


@dataclass(frozen=True)
class Pred(Condition):
    """Atomic predication ``name(arg1, ..., argn)``."""

    name: str
    args: tuple[Marker, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Eq(Condition):
    """Marker equation; by convention the anaphoric marker is on the left."""

    left: Marker
    right: Marker

    def __str__(self) -> str:
        return f"{self.left}={self.right}"


@dataclass(frozen=True)
class Impl(Condition):
    antecedent: "Drs"
    consequent: "Drs"


@dataclass(frozen=True)
class Neg(Condition):
    inner: "Drs"


@dataclass(frozen=True)
class Disj(Condition):
    left: "Drs"
    right: "Drs"


@dataclass(frozen=True)
class Alpha(Condition):
    """Unresolved anaphoric material awaiting resolution."""

    inner: "Drs"


@dataclass(frozen=True)
class Qualia(Condition):
    """Lexically supplied qualia information.

    The payload is normally a plain DRS.  Agentive/telic payloads of nouns
    may be lambda abstractions (event types), in which case they take part in
    type coercion but not in coercive accommodation.
    """

    role: QualiaRole
    payload: object  # Drs | terms.Term


class Drs:
    """A box ``<U, C>``: a universe of markers and a set of conditions.

    Equality and hashing treat both components as sets; the stored tuples
    keep first-insertion order for deterministic iteration.
    """

    __slots__ = ("universe", "conditions", "_hash")

    def __init__(self, universe: Iterable[Marker] = (), conditions: Iterable[Condition] = ()):
        seen_u: list[Marker] = []
        for m in universe:
            if m not in seen_u:
                seen_u.append(m)
        seen_c: list[Condition] = []
        for c in conditions:
            if c not in seen_c:
                seen_c.append(c)
        object.__setattr__(self, "universe", tuple(seen_u))
        object.__setattr__(self, "conditions", tuple(seen_c))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Drs is immutable")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Drs):
            return NotImplemented
        return (
            frozenset(self.universe) == frozenset(other.universe)
            and frozenset(self.conditions) == frozenset(other.conditions)
        )

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((frozenset(self.universe), frozenset(self.conditions)))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        u = " ".join(map(str, self.universe))
        c = ", ".join(map(str, self.conditions))
        return f"<[{u}],[{c}]>"


EMPTY_DRS = Drs()

#: A path step names a condition of the current box and, for conditions with
#: several sub-boxes, which branch to enter.
PathStep = tuple[Condition, str]
DrsPath = tuple[PathStep, ...]

_BRANCHES = {
    Impl: (("ant", "antecedent"), ("cons", "consequent")),
    Neg: (("inner", "inner"),),
    Disj: (("left", "left"), ("right", "right")),
    Alpha: (("inner", "inner"),),
}


def child_boxes(cond: Condition) -> tuple[tuple[str, Drs], ...]:
    """The (branch name, sub-DRS) slots of a condition.

    Qualia payloads appear only when they are plain DRSs; lambda payloads
    have no box-level positions.
    """
    spec = _BRANCHES.get(type(cond))
    if spec is not None:
        return tuple((branch, getattr(cond, attr)) for branch, attr in spec)
    if isinstance(cond, Qualia) and isinstance(cond.payload, Drs):
        return (("inner", cond.payload),)
    return ()


def _replace_children(cond: Condition, repl: Mapping[str, Drs]) -> Condition:
    spec = _BRANCHES.get(type(cond))
    if spec is not None:
        kwargs = {attr: repl.get(branch, getattr(cond, attr)) for branch, attr in spec}
        return type(cond)(**kwargs)
    if isinstance(cond, Qualia) and "inner" in repl:
        return Qualia(cond.role, repl["inner"])
    raise PathError(f"condition {cond!r} has no sub-DRS branches")


def sub_drs_at(root: Drs, path: DrsPath) -> Drs:
    """Dereference a path; raises PathError if any step is invalid."""
    current = root
    for cond, branch in path:
        if cond not in current.conditions:
            raise PathError(f"condition not found at path step: {cond!r}")
        slots = dict(child_boxes(cond))
        if branch not in slots:
            raise PathError(f"no branch {branch!r} on {type(cond).__name__}")
        current = slots[branch]
    return current


def iter_boxes(root: Drs) -> Iterator[tuple[DrsPath, Drs]]:
    """All box occurrences in pre-order, each with its path from the root."""

    def walk(path: DrsPath, box: Drs) -> Iterator[tuple[DrsPath, Drs]]:
        yield path, box
        for cond in box.conditions:
            for branch, child in child_boxes(cond):
                yield from walk(path + ((cond, branch),), child)

    return walk((), root)


def edit_at_paths(root: Drs, edits: Mapping[DrsPath, Callable[[Drs], Drs]]) -> Drs:
    """Apply box-level edit functions at several paths in one bottom-up pass.

    Edits at deeper paths are applied first; an edit at an ancestor path sees
    the already-edited descendants.  All paths are validated against the
    original root.
    """
    for p in edits:
        sub_drs_at(root, p)

    def rebuild(box: Drs, prefix: DrsPath) -> Drs:
        plen = len(prefix)
        relevant = [p for p in edits if p[:plen] == prefix]
        if not relevant:
            return box
        new_conds: list[Condition] = []
        for cond in box.conditions:
            repl: dict[str, Drs] = {}
            for branch, child in child_boxes(cond):
                cp = prefix + ((cond, branch),)
                if any(p[: len(cp)] == cp for p in relevant):
                    repl[branch] = rebuild(child, cp)
            new_conds.append(_replace_children(cond, repl) if repl else cond)
        out = Drs(box.universe, new_conds)
        fn = edits.get(prefix)
        return fn(out) if fn else out

    return rebuild(root, ())


def substitute(root: Drs, at: DrsPath, replacement: Drs) -> Drs:
    """Replace the sub-DRS at ``at`` by ``replacement``, everything else untouched."""
    return edit_at_paths(root, {at: lambda _old: replacement})


def substitute_many(root: Drs, replacements: Mapping[DrsPath, Drs]) -> Drs:
    """Simultaneous substitution at pairwise disjoint paths.

    Overlapping paths (one a prefix of another) are rejected: the composed
    reading of such a double substitution is not well defined.
    """
    paths = list(replacements)
    for i, p in enumerate(paths):
        for q in paths[i + 1 :]:
            if p[: len(q)] == q or q[: len(p)] == p:
                raise PathError("overlapping substitution paths")
    return edit_at_paths(root, {p: (lambda _old, d=d: d) for p, d in replacements.items()})


def merge(k1: Drs, k2: Drs) -> Drs:
    """Union of the universes and union of the condition sets.

    Marker-capture avoidance is the caller's duty (see rename_fresh); markers
    produced by one MarkerFactory are disjoint by construction.
    """
    return Drs(k1.universe + k2.universe, k1.conditions + k2.conditions)


def coercive_accommodation(k: Drs) -> tuple[Drs, ...]:
    """Merge ``k`` with each of its own top-level qualia payloads.

    Only top-level qualia conditions with plain-DRS payloads are used;
    embedded or lambda-typed qualia information cannot be accommodated.
    Returns the empty tuple when no such condition exists.
    """
    out: list[Drs] = []
    for cond in k.conditions:
        if isinstance(cond, Qualia) and isinstance(cond.payload, Drs):
            merged = merge(k, cond.payload)
            if merged not in out:
                out.append(merged)
    return tuple(out)


def _direct_edges(root: Drs) -> dict[DrsPath, list[DrsPath]]:
    edges: dict[DrsPath, list[DrsPath]] = {}

    def add(a: DrsPath, b: DrsPath) -> None:
        edges.setdefault(a, []).append(b)

    for path, box in iter_boxes(root):
        for cond in box.conditions:
            if isinstance(cond, Impl):
                ant = path + ((cond, "ant"),)
                cons = path + ((cond, "cons"),)
                add(path, ant)
                add(ant, cons)
            elif isinstance(cond, (Neg, Alpha)):
                add(path, path + ((cond, "inner"),))
            elif isinstance(cond, Disj):
                add(path, path + ((cond, "left"),))
                add(path, path + ((cond, "right"),))
            elif isinstance(cond, Qualia) and isinstance(cond.payload, Drs):
                add(path, path + ((cond, "inner"),))
    return edges


def subordinates(root: Drs, p1: DrsPath, p2: DrsPath) -> bool:
    """True iff the box at ``p2`` is subordinated to the box at ``p1``.

    The relation is the transitive closure of: an implication's antecedent
    subordinates its consequent; a box subordinates the antecedents of its
    implication conditions, the scopes of its negations, both of its
    disjuncts, and its alpha and qualia payloads.  It is irreflexive.
    """
    sub_drs_at(root, p1)
    sub_drs_at(root, p2)
    edges = _direct_edges(root)
    seen: set[DrsPath] = set()
    stack = list(edges.get(p1, ()))
    while stack:
        p = stack.pop()
        if p == p2:
            return True
        if p in seen:
            continue
        seen.add(p)
        stack.extend(edges.get(p, ()))
    return False


def subordinating_boxes(root: Drs, target: DrsPath) -> tuple[DrsPath, ...]:
    """All box paths that subordinate ``target``, in pre-order."""
    sub_drs_at(root, target)
    edges = _direct_edges(root)
    reach: dict[DrsPath, set[DrsPath]] = {}

    def reachable(p: DrsPath) -> set[DrsPath]:
        if p not in reach:
            acc: set[DrsPath] = set()
            reach[p] = acc  # cycle-safe on trees
            for q in edges.get(p, ()):
                acc.add(q)
                acc |= reachable(q)
        return reach[p]

    return tuple(p for p, _box in iter_boxes(root) if target in reachable(p))


def accessible_markers(root: Drs, frm: DrsPath) -> frozenset[Marker]:
    """Markers usable as antecedents from the box at ``frm``.

    The local universe plus the universes of all subordinating boxes.
    Universes reachable only inside a qualia payload never subordinate an
    outside box, so qualia material stays opaque to linking; bridging reaches
    it via coercive accommodation instead.
    """
    box = sub_drs_at(root, frm)
    out = set(box.universe)
    for p in subordinating_boxes(root, frm):
        out.update(sub_drs_at(root, p).universe)
    return frozenset(out)


def _payload_is_term(payload: object) -> bool:
    return not isinstance(payload, Drs)


def all_markers(k: Drs) -> frozenset[Marker]:
    """Every marker occurring anywhere in ``k`` (universes, arguments, payloads)."""
    out: set[Marker] = set(k.universe)
    for cond in k.conditions:
        if isinstance(cond, Pred):
            out.update(cond.args)
        elif isinstance(cond, Eq):
            out.update((cond.left, cond.right))
        elif isinstance(cond, Qualia) and _payload_is_term(cond.payload):
            out.update(cond.payload.all_markers())
        else:
            for _branch, child in child_boxes(cond):
                out |= all_markers(child)
    return frozenset(out)


def bound_markers(k: Drs) -> frozenset[Marker]:
    """Markers declared in some universe of ``k`` (qualia payload universes included)."""
    out: set[Marker] = set(k.universe)
    for cond in k.conditions:
        for _branch, child in child_boxes(cond):
            out |= bound_markers(child)
    return frozenset(out)


def _free_markers_under(k: Drs, bound: frozenset[Marker]) -> frozenset[Marker]:
    b = bound | frozenset(k.universe)
    free: set[Marker] = set()
    for cond in k.conditions:
        if isinstance(cond, Pred):
            free.update(a for a in cond.args if a not in b)
        elif isinstance(cond, Eq):
            free.update(m for m in (cond.left, cond.right) if m not in b)
        elif isinstance(cond, Impl):
            free |= _free_markers_under(cond.antecedent, b)
            free |= _free_markers_under(cond.consequent, b | frozenset(cond.antecedent.universe))
        elif isinstance(cond, Qualia) and _payload_is_term(cond.payload):
            free |= cond.payload.free_markers_under(b)
        else:
            for _branch, child in child_boxes(cond):
                free |= _free_markers_under(child, b)
    return frozenset(free)


def free_markers(root: Drs) -> frozenset[Marker]:
    """Markers occurring in some condition with no subordinating universe declaring them."""
    return _free_markers_under(root, frozenset())


def contains_alpha(k: Drs) -> bool:
    for cond in k.conditions:
        if isinstance(cond, Alpha):
            return True
        if isinstance(cond, Qualia) and _payload_is_term(cond.payload):
            if cond.payload.contains_alpha():
                return True
            continue
        for _branch, child in child_boxes(cond):
            if contains_alpha(child):
                return True
    return False


def is_proper(k: Drs) -> bool:
    """No unresolved anaphoric material and no free markers."""
    return not contains_alpha(k) and not free_markers(k)


def rename_markers(k: Drs, mapping: Mapping[Marker, Marker]) -> Drs:
    """Rename marker occurrences everywhere in ``k`` per ``mapping``.

    This is a raw, unscoped rename; callers are responsible for picking
    capture-free targets (markers are globally unique by construction).
    """
    if not mapping:
        return k

    def ren(m: Marker) -> Marker:
        return mapping.get(m, m)

    def walk(d: Drs) -> Drs:
        conds: list[Condition] = []
        for cond in d.conditions:
            if isinstance(cond, Pred):
                conds.append(Pred(cond.name, tuple(ren(a) for a in cond.args)))
            elif isinstance(cond, Eq):
                conds.append(Eq(ren(cond.left), ren(cond.right)))
            elif isinstance(cond, Impl):
                conds.append(Impl(walk(cond.antecedent), walk(cond.consequent)))
            elif isinstance(cond, Neg):
                conds.append(Neg(walk(cond.inner)))
            elif isinstance(cond, Disj):
                conds.append(Disj(walk(cond.left), walk(cond.right)))
            elif isinstance(cond, Alpha):
                conds.append(Alpha(walk(cond.inner)))
            elif isinstance(cond, Qualia):
                if isinstance(cond.payload, Drs):
                    conds.append(Qualia(cond.role, walk(cond.payload)))
                else:
                    conds.append(Qualia(cond.role, cond.payload.rename_markers(mapping)))
            else:
                raise TypeError(f"unknown condition: {cond!r}")
        return Drs(tuple(ren(m) for m in d.universe), conds)

    return walk(k)


def rename_fresh(k: Drs, avoid: Iterable[Marker]) -> Drs:
    """Alpha-variant of ``k`` whose bound markers are disjoint from ``avoid``.

    Free markers are never renamed; bound-occurrence structure is preserved.
    """
    avoid_set = frozenset(avoid)
    clashing = bound_markers(k) & avoid_set
    if not clashing:
        return k
    taken = all_markers(k) | avoid_set
    next_index = max((m.index for m in taken), default=0) + 1
    mapping: dict[Marker, Marker] = {}
    for m in sorted(clashing):
        mapping[m] = Marker(m.sort, next_index)
        next_index += 1
    return rename_markers(k, mapping)


def _bound_in_order(k: Drs) -> list[Marker]:
    """Bound markers in first-declaration pre-order, lambda payload binders included."""
    out: list[Marker] = []
    seen: set[Marker] = set()

    def add(m: Marker) -> None:
        if m not in seen:
            seen.add(m)
            out.append(m)

    def walk(d: Drs) -> None:
        for m in d.universe:
            add(m)
        for cond in d.conditions:
            if isinstance(cond, Qualia) and _payload_is_term(cond.payload):
                for m in cond.payload.bound_markers_in_order():
                    add(m)
                continue
            for _branch, child in child_boxes(cond):
                walk(child)

    walk(k)
    return out


def alpha_equal(k1: Drs, k2: Drs) -> bool:
    """Structural equality up to a sort-preserving renaming of bound markers.

    Free markers must match exactly.  Uses a backtracking match over
    condition sets, so duplicated structure is handled correctly.
    """
    if k1 == k2:
        return True
    bound1 = frozenset(_bound_in_order(k1))
    bound2 = frozenset(_bound_in_order(k2))
    if len(bound1) != len(bound2):
        return False
    # markers never declared by any universe or binder must match exactly
    if all_markers(k1) - bound1 != all_markers(k2) - bound2:
        return False

    def bind(m: Marker, n: Marker, fwd: dict, rev: dict):
        if m.sort != n.sort:
            return None
        m_bound, n_bound = m in bound1, n in bound2
        if m_bound != n_bound:
            return None
        if not m_bound:
            return (fwd, rev) if m == n else None
        if m in fwd:
            return (fwd, rev) if fwd[m] == n else None
        if n in rev:
            return None
        f2, r2 = dict(fwd), dict(rev)
        f2[m] = n
        r2[n] = m
        return (f2, r2)

    def shape(obj) -> object:
        if isinstance(obj, Drs):
            u_ent = sum(1 for m in obj.universe if m.sort == SORT_ENTITY)
            u_ev = len(obj.universe) - u_ent
            return ("drs", u_ent, u_ev, tuple(sorted(map(repr, map(shape, obj.conditions)))))
        if isinstance(obj, Pred):
            return ("pred", obj.name, len(obj.args))
        if isinstance(obj, Eq):
            return ("eq",)
        if isinstance(obj, Impl):
            return ("impl", shape(obj.antecedent), shape(obj.consequent))
        if isinstance(obj, Neg):
            return ("neg", shape(obj.inner))
        if isinstance(obj, Disj):
            return ("disj", shape(obj.left), shape(obj.right))
        if isinstance(obj, Alpha):
            return ("alpha", shape(obj.inner))
        if isinstance(obj, Qualia):
            payload = obj.payload
            inner = shape(payload) if isinstance(payload, Drs) else payload.shape()
            return ("qualia", obj.role.value, inner)
        return ("term", repr(obj))

    def match_markers(ms, ns, fwd, rev):
        if len(ms) != len(ns):
            return
        state = (fwd, rev)
        for m, n in zip(ms, ns):
            state = bind(m, n, *state)
            if state is None:
                return
        yield state

    def match_cond(a: Condition, b: Condition, fwd, rev):
        if type(a) is not type(b):
            return
        if isinstance(a, Pred):
            if a.name == b.name:
                yield from match_markers(a.args, b.args, fwd, rev)
        elif isinstance(a, Eq):
            yield from match_markers((a.left, a.right), (b.left, b.right), fwd, rev)
        elif isinstance(a, Impl):
            for f2, r2 in match_drs(a.antecedent, b.antecedent, fwd, rev):
                yield from match_drs(a.consequent, b.consequent, f2, r2)
        elif isinstance(a, Neg):
            yield from match_drs(a.inner, b.inner, fwd, rev)
        elif isinstance(a, Disj):
            for f2, r2 in match_drs(a.left, b.left, fwd, rev):
                yield from match_drs(a.right, b.right, f2, r2)
        elif isinstance(a, Alpha):
            yield from match_drs(a.inner, b.inner, fwd, rev)
        elif isinstance(a, Qualia):
            if a.role is not b.role:
                return
            pa, pb = a.payload, b.payload
            if isinstance(pa, Drs) != isinstance(pb, Drs):
                return
            if isinstance(pa, Drs):
                yield from match_drs(pa, pb, fwd, rev)
            else:
                yield from pa.match_term(pb, fwd, rev, bind, match_drs)

    def match_conds(pending_a, pending_b, fwd, rev):
        # Backtracking bipartite match; conditions grouped by shape already.
        if not pending_a:
            yield (fwd, rev)
            return
        a = pending_a[0]
        rest = pending_a[1:]
        for i, b in enumerate(pending_b):
            for st in match_cond(a, b, fwd, rev):
                yield from match_conds(rest, pending_b[:i] + pending_b[i + 1 :], *st)

    def match_drs(a: Drs, b: Drs, fwd, rev):
        if len(a.universe) != len(b.universe) or len(a.conditions) != len(b.conditions):
            return
        groups_a: dict[object, list[Condition]] = {}
        groups_b: dict[object, list[Condition]] = {}
        for c in a.conditions:
            groups_a.setdefault(repr(shape(c)), []).append(c)
        for c in b.conditions:
            groups_b.setdefault(repr(shape(c)), []).append(c)
        if set(groups_a) != set(groups_b):
            return
        if any(len(groups_a[k]) != len(groups_b[k]) for k in groups_a):
            return

        keys = sorted(groups_a)

        def per_group(ki: int, fwd, rev):
            if ki == len(keys):
                # Complete the universe bijection over markers not forced by conditions.
                ms = [m for m in a.universe if m not in fwd]
                ns = [n for n in b.universe if n not in rev]
                mapped_targets = {fwd[m] for m in a.universe if m in fwd}
                if mapped_targets - set(b.universe):
                    return
                if len(ms) != len(ns):
                    return

                def assign(i, fwd, rev):
                    if i == len(ms):
                        yield (fwd, rev)
                        return
                    for n in ns:
                        st = bind(ms[i], n, fwd, rev)
                        if st is not None:
                            yield from assign(i + 1, *st)

                yield from assign(0, fwd, rev)
                return
            key = keys[ki]
            for f2, r2 in match_conds(tuple(groups_a[key]), tuple(groups_b[key]), fwd, rev):
                yield from per_group(ki + 1, f2, r2)

        yield from per_group(0, fwd, rev)

    for _st in match_drs(k1, k2, {}, {}):
        return True
    return False
