"""Functional composition over DRS lambda terms, with qualia-driven coercion.

Composition always binds the first argument position of the argument term and
degenerates to functional application when no extra argument sequence is
needed.  When the types clash, the argument's qualia structure supplies
replacement terms (type coercion); one coercion step per composition attempt,
never chained.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .drs import (
    Alpha,
    Condition,
    Drs,
    Impl,
    Marker,
    MarkerFactory,
    Qualia,
    QUALIA_PREFERENCE,
    QualiaRole,
    SORT_ENTITY,
    child_boxes,
    merge,
    rename_markers,
)
from .errors import CompositionError, IllTypedError
from .terms import App, CondTerm, Fn, LambdaDrs, Leaf, Merge, SemType, T, Term, Var


def type_of(term: Term) -> SemType:
    """The simple type of a term; lambda-free DRSs have type t."""
    if isinstance(term, Leaf):
        return T
    if isinstance(term, Var):
        return term.type
    if isinstance(term, App):
        tf = type_of(term.fn)
        if not isinstance(tf, Fn):
            raise IllTypedError(f"cannot apply a term of type {tf}")
        ta = type_of(term.arg)
        if tf.arg != ta:
            raise IllTypedError(f"expected argument of type {tf.arg}, got {ta}")
        return tf.result
    if isinstance(term, Merge):
        tl, tr = type_of(term.left), type_of(term.right)
        if tl != T or tr != T:
            raise IllTypedError(f"merge operands must have type t, got {tl} and {tr}")
        return T
    if isinstance(term, CondTerm):
        for op in term.operands:
            to = type_of(op)
            if to != T:
                raise IllTypedError(f"{term.kind} operand must have type t, got {to}")
        return T
    if isinstance(term, LambdaDrs):
        result = type_of(term.body)
        for _m, t in reversed(term.params):
            result = Fn(t, result)
        return result
    raise IllTypedError(f"not a term: {term!r}")


def _subst(term: Term, var: Marker, value: Term) -> Term:
    """Substitute ``value`` for the variable ``var``; capture-free provided all
    markers stem from one factory (globally unique binders)."""
    if isinstance(term, Var):
        return value if term.marker == var else term
    if isinstance(term, Leaf):
        if var not in term.all_markers():
            return term
        if isinstance(value, Var):
            return Leaf(rename_markers(term.drs, {var: value.marker}))
        raise IllTypedError(
            f"cannot substitute a non-variable term for marker {var} inside a DRS"
        )
    if isinstance(term, App):
        return App(_subst(term.fn, var, value), _subst(term.arg, var, value))
    if isinstance(term, Merge):
        return Merge(_subst(term.left, var, value), _subst(term.right, var, value))
    if isinstance(term, CondTerm):
        return CondTerm(term.kind, tuple(_subst(op, var, value) for op in term.operands))
    if isinstance(term, LambdaDrs):
        if any(m == var for m, _t in term.params):
            return term
        return LambdaDrs(term.params, _subst(term.body, var, value))
    raise IllTypedError(f"not a term: {term!r}")


def _normalize_drs(d: Drs) -> Drs:
    """Reduce any term payloads of qualia conditions and recurse into sub-boxes."""
    conds: list[Condition] = []
    changed = False
    for cond in d.conditions:
        if isinstance(cond, Qualia):
            payload = cond.payload
            if isinstance(payload, Drs):
                np = _normalize_drs(payload)
            else:
                np = beta_reduce(payload)
                if isinstance(np, Leaf):
                    np = np.drs
            if np is not payload:
                cond = Qualia(cond.role, np)
                changed = True
        else:
            repl = {}
            for branch, child in child_boxes(cond):
                nc = _normalize_drs(child)
                if nc is not child:
                    repl[branch] = nc
            if repl:
                from .drs import _replace_children

                cond = _replace_children(cond, repl)
                changed = True
        conds.append(cond)
    return Drs(d.universe, conds) if changed else d


_COND_BUILDERS = {
    "alpha": lambda ops: Alpha(ops[0]),
    "impl": lambda ops: Impl(ops[0], ops[1]),
}


def beta_reduce(term: Term) -> Term:
    """Beta-normal form; pending merges are evaluated once both operands are
    lambda-free, delayed conditions collapse once their operands are DRSs."""
    if isinstance(term, Var):
        return term
    if isinstance(term, Leaf):
        return Leaf(_normalize_drs(term.drs))
    if isinstance(term, App):
        fn = beta_reduce(term.fn)
        arg = beta_reduce(term.arg)
        if isinstance(fn, LambdaDrs) and fn.params:
            (p0, _t0), rest = fn.params[0], fn.params[1:]
            body = _subst(fn.body, p0, arg)
            out: Term = LambdaDrs(rest, body) if rest else body
            return beta_reduce(out)
        return App(fn, arg)
    if isinstance(term, Merge):
        left = beta_reduce(term.left)
        right = beta_reduce(term.right)
        if isinstance(left, Leaf) and isinstance(right, Leaf):
            return Leaf(_normalize_drs(merge(left.drs, right.drs)))
        return Merge(left, right)
    if isinstance(term, CondTerm):
        ops = tuple(beta_reduce(op) for op in term.operands)
        if all(isinstance(op, Leaf) for op in ops):
            cond = _COND_BUILDERS[term.kind]([op.drs for op in ops])
            return Leaf(Drs((), (cond,)))
        return CondTerm(term.kind, ops)
    if isinstance(term, LambdaDrs):
        body = beta_reduce(term.body)
        if not term.params:
            return body
        return LambdaDrs(term.params, body)
    raise IllTypedError(f"not a term: {term!r}")


def _max_index(terms: Iterable[Term]) -> int:
    return max((m.index for t in terms for m in t.all_markers()), default=0)


class _LocalFresh:
    """Fallback freshness source scanning the operands; a shared MarkerFactory
    should be used whenever terms from several sources are being combined."""

    def __init__(self, terms: Iterable[Term]):
        self._next = _max_index(terms) + 1

    def fresh(self, sort: str) -> Marker:
        m = Marker(sort, self._next)
        self._next += 1
        return m


def _param_sorts(argument: Term) -> list[str]:
    if isinstance(argument, LambdaDrs):
        return [m.sort for m, _t in argument.params]
    return []


def _clause1(functor: Term, argument: Term, alpha: SemType, fresh) -> Term | None:
    """Direct composition: bind the argument's first parameter so that the
    result fits the functor's argument type; None when no fit exists."""
    t_arg = type_of(argument)
    if t_arg == alpha:
        return beta_reduce(App(functor, argument))
    if not isinstance(t_arg, Fn):
        return None
    first = t_arg.arg
    sorts = _param_sorts(argument)
    sigma_types: list[SemType] = []
    rest = t_arg.result
    while True:
        if Fn(first, rest) == alpha:
            break
        if isinstance(rest, Fn):
            sigma_types.append(rest.arg)
            rest = rest.result
        else:
            return None
    v = fresh.fresh(sorts[0] if sorts else SORT_ENTITY)
    sigmas = []
    for i, st in enumerate(sigma_types):
        sort = sorts[1 + i] if len(sorts) > 1 + i else SORT_ENTITY
        sigmas.append((fresh.fresh(sort), st))
    spine: Term = App(argument, Var(v, first))
    for m, st in sigmas:
        spine = App(spine, Var(m, st))
    out: Term = App(functor, LambdaDrs(((v, first),), spine))
    if sigmas:
        out = LambdaDrs(tuple(sigmas), out)
    return beta_reduce(out)


def _qualia_access_detailed(term: Term) -> list[tuple[QualiaRole, Term]]:
    found: list[tuple[QualiaRole, Term]] = []

    def add(role: QualiaRole, payload: Term) -> None:
        if (role, payload) not in found:
            found.append((role, payload))

    def walk_drs(d: Drs) -> None:
        for cond in d.conditions:
            if isinstance(cond, Qualia):
                payload = cond.payload
                if isinstance(payload, Drs):
                    add(cond.role, Leaf(payload))
                    walk_drs(payload)
                else:
                    add(cond.role, payload)
                    walk_term(payload)
            else:
                for _branch, child in child_boxes(cond):
                    walk_drs(child)

    def walk_term(t: Term) -> None:
        if isinstance(t, Leaf):
            walk_drs(t.drs)
        elif isinstance(t, App):
            walk_term(t.fn)
            walk_term(t.arg)
        elif isinstance(t, Merge):
            walk_term(t.left)
            walk_term(t.right)
        elif isinstance(t, CondTerm):
            for op in t.operands:
                walk_term(op)
        elif isinstance(t, LambdaDrs):
            walk_term(t.body)

    walk_term(term)
    found.sort(key=lambda rp: QUALIA_PREFERENCE.index(rp[0]))
    return found


def qualia_access(term: Term) -> tuple[Term, ...]:
    """All qualia payloads reachable at any embedding depth, as terms.

    Plain DRS payloads are wrapped as leaves; event-type payloads come back
    as the lambda terms they are.  Ordered agentive, telic, formal,
    constitutive, then discovery order.
    """
    out: list[Term] = []
    for _role, payload in _qualia_access_detailed(term):
        if payload not in out:
            out.append(payload)
    return tuple(out)


def _type_coercion_detailed(term: Term, fresh) -> list[tuple[QualiaRole, Term, Term]]:
    out: list[tuple[QualiaRole, Term, Term]] = []
    for role, payload in _qualia_access_detailed(term):
        try:
            t_f = type_of(term)
        except IllTypedError:
            return []
        if not isinstance(t_f, Fn):
            continue
        candidate = _clause1(term, payload, t_f.arg, fresh)
        if candidate is not None and all(candidate != c for _r, _p, c in out):
            out.append((role, payload, candidate))
    return out


def type_coercion(term: Term, factory: MarkerFactory | None = None) -> tuple[Term, ...]:
    """Coerced variants of ``term``: the term composed with each of its own
    qualia payloads.  Empty when no coercion is available."""
    fresh = factory if factory is not None else _LocalFresh([term])
    return tuple(c for _r, _p, c in _type_coercion_detailed(term, fresh))


def compose_detailed(
    functor: Term,
    argument: Term,
    fresh,
    allow_coercion: bool = True,
) -> list[tuple[Term, tuple[QualiaRole, Term] | None]]:
    t_f = type_of(functor)
    if not isinstance(t_f, Fn):
        raise CompositionError(f"functor has type {t_f}, which cannot be applied")
    direct = _clause1(functor, argument, t_f.arg, fresh)
    if direct is not None:
        return [(direct, None)]
    if not allow_coercion:
        return []
    out: list[tuple[Term, tuple[QualiaRole, Term] | None]] = []
    for role, payload, coerced in _type_coercion_detailed(argument, fresh):
        res = _clause1(functor, coerced, t_f.arg, fresh)
        if res is not None and all(res != r for r, _c in out):
            out.append((res, (role, payload)))
    return out


def functional_composition(
    functor: Term,
    argument: Term,
    factory: MarkerFactory | None = None,
) -> tuple[Term, ...]:
    """Compose functor with argument, coercing the argument if necessary.

    Returns every composition licensed by the types; the empty tuple signals
    a type clash with no coercion route.  Coercion is capped at one step per
    attempt.  Pass the derivation's MarkerFactory when combining terms that
    were built with it, so freshly introduced parameters cannot collide.
    """
    fresh = factory if factory is not None else _LocalFresh([functor, argument])
    return tuple(t for t, _c in compose_detailed(functor, argument, fresh))
