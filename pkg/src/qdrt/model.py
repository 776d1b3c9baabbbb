"""Finite first-order models and brute-force embedding checks for proper DRSs.

verify() decides truth of a proper DRS in a given model by exhausting
embeddings; consistent() and entails() quantify over all models up to a
domain bound, instantiating only the predicates that occur in the checked
DRSs.  Qualia residue is truth-conditionally inert and skipped everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping

from .drs import (
    Alpha,
    Disj,
    Drs,
    Eq,
    Impl,
    Neg,
    Pred,
    Qualia,
    SORT_ENTITY,
    SORT_EVENT,
    is_proper,
)
from .errors import ImproperDrsError, ModelFormatError

#: An embedding assigns domain individuals to discourse markers.
Embedding = dict


@dataclass(frozen=True)
class Model:
    """A finite first-order structure.

    ``interpretation`` maps predicate symbols to sets of argument tuples
    (tuples even for unary predicates).  ``sorts`` optionally classifies
    individuals as "entity" or "event"; unsorted individuals embed markers of
    either sort.
    """

    domain: tuple[str, ...]
    interpretation: Mapping[str, frozenset]
    sorts: Mapping[str, str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        interp = {}
        for name, tuples in dict(self.interpretation).items():
            arities = {len(t) for t in tuples}
            if len(arities) > 1:
                raise ModelFormatError(f"mixed arities for predicate {name!r}")
            for t in tuples:
                for d in t:
                    if d not in self.domain:
                        raise ModelFormatError(
                            f"{d!r} in extension of {name!r} is not in the domain"
                        )
            interp[name] = frozenset(map(tuple, tuples))
        object.__setattr__(self, "interpretation", interp)


def parse_model(text: str) -> Model:
    """Parse the model file format::

        domain: d1 d2 d3
        pred bar: (d1) (d2)
        pred of: (d1,d2)
    """
    domain: tuple[str, ...] | None = None
    interp: dict[str, set] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("domain:"):
            if domain is not None:
                raise ModelFormatError(f"line {ln}: duplicate domain declaration")
            domain = tuple(line[len("domain:"):].split())
        elif line.startswith("pred "):
            head, sep, body = line[len("pred "):].partition(":")
            if not sep:
                raise ModelFormatError(f"line {ln}: missing ':' after predicate name")
            name = head.strip()
            if not name:
                raise ModelFormatError(f"line {ln}: missing predicate name")
            tuples = interp.setdefault(name, set())
            body = body.strip()
            pos = 0
            while pos < len(body):
                if body[pos].isspace():
                    pos += 1
                    continue
                if body[pos] != "(":
                    raise ModelFormatError(f"line {ln}: expected '(' in extension")
                end = body.find(")", pos)
                if end < 0:
                    raise ModelFormatError(f"line {ln}: unclosed tuple")
                items = [s.strip() for s in body[pos + 1 : end].split(",") if s.strip()]
                if not items:
                    raise ModelFormatError(f"line {ln}: empty tuple")
                tuples.add(tuple(items))
                pos = end + 1
        else:
            raise ModelFormatError(f"line {ln}: expected 'domain:' or 'pred name:'")
    if domain is None:
        raise ModelFormatError("missing domain declaration")
    try:
        return Model(domain, {k: frozenset(v) for k, v in interp.items()})
    except ModelFormatError:
        raise
    except Exception as exc:  # malformed extensions
        raise ModelFormatError(str(exc)) from exc


def collect_predicates(k: Drs) -> dict[str, int]:
    """Truth-relevant predicate symbols of a DRS with their arities."""
    out: dict[str, int] = {}

    def walk(d: Drs) -> None:
        for cond in d.conditions:
            if isinstance(cond, Pred):
                if cond.name in out and out[cond.name] != len(cond.args):
                    raise ModelFormatError(
                        f"predicate {cond.name!r} used with two arities"
                    )
                out[cond.name] = len(cond.args)
            elif isinstance(cond, Impl):
                walk(cond.antecedent)
                walk(cond.consequent)
            elif isinstance(cond, Neg):
                walk(cond.inner)
            elif isinstance(cond, Disj):
                walk(cond.left)
                walk(cond.right)
            # Alpha cannot occur in proper DRSs; Qualia residue is inert.

    walk(k)
    return out


# ---------------------------------------------------------------------------
# Compiled evaluation core
# ---------------------------------------------------------------------------
# A DRS compiles once into nested closures over (exts, doms, env): exts is a
# tuple of extensions indexed by predicate slot (unary extensions are sets of
# individuals, n-ary ones sets of tuples), doms maps marker sort to candidate
# individuals, env is the mutable embedding.  Model enumeration then reuses
# the compiled form across millions of candidate models.

_EMPTY: frozenset = frozenset()


def _compile_cond(cond, slot_of: dict[str, int]) -> Callable:
    if isinstance(cond, Pred):
        slot = slot_of[cond.name]
        args = cond.args
        if len(args) == 1:
            a0 = args[0]
            return lambda exts, doms, env: env[a0] in exts[slot]
        return lambda exts, doms, env: tuple(env[a] for a in args) in exts[slot]
    if isinstance(cond, Eq):
        left, right = cond.left, cond.right
        return lambda exts, doms, env: env[left] == env[right]
    if isinstance(cond, Neg):
        inner = _compile_box(cond.inner, slot_of)
        return lambda exts, doms, env: not inner(exts, doms, env)
    if isinstance(cond, Disj):
        lf = _compile_box(cond.left, slot_of)
        rf = _compile_box(cond.right, slot_of)
        return lambda exts, doms, env: lf(exts, doms, env) or rf(exts, doms, env)
    if isinstance(cond, Impl):
        ant_univ = cond.antecedent.universe
        ant_sorts = tuple(m.sort for m in ant_univ)
        ant_conds = _compiled_conditions(cond.antecedent, slot_of)
        cons = _compile_box(cond.consequent, slot_of)

        def impl_ok(exts, doms, env):
            for combo in product(*(doms[s] for s in ant_sorts)):
                for m, v in zip(ant_univ, combo):
                    env[m] = v
                if all(c(exts, doms, env) for c in ant_conds):
                    if not cons(exts, doms, env):
                        return False
            return True

        return impl_ok
    if isinstance(cond, Alpha):
        raise ImproperDrsError("cannot evaluate an unresolved anaphoric condition")
    raise ImproperDrsError(f"cannot evaluate condition {cond!r}")


def _compiled_conditions(d: Drs, slot_of: dict[str, int]) -> list[Callable]:
    atomic, complex_ = [], []
    for cond in d.conditions:
        if isinstance(cond, Qualia):
            continue
        (atomic if isinstance(cond, (Pred, Eq)) else complex_).append(
            _compile_cond(cond, slot_of)
        )
    return atomic + complex_


def _compile_box(d: Drs, slot_of: dict[str, int]) -> Callable:
    universe = d.universe
    sorts = tuple(m.sort for m in universe)
    conds = _compiled_conditions(d, slot_of)

    if not universe:
        return lambda exts, doms, env: all(c(exts, doms, env) for c in conds)

    def exists(exts, doms, env):
        for combo in product(*(doms[s] for s in sorts)):
            for m, v in zip(universe, combo):
                env[m] = v
            if all(c(exts, doms, env) for c in conds):
                return True
        return False

    return exists


def _prepared_extensions(
    preds: dict[str, int], slot_of: dict[str, int], interpretation: Mapping[str, frozenset]
) -> tuple:
    exts: list = [frozenset()] * len(slot_of)
    for name, slot in slot_of.items():
        stored = interpretation.get(name, _EMPTY)
        if stored:
            stored_arity = len(next(iter(stored)))
            if stored_arity != preds[name]:
                raise ModelFormatError(
                    f"model interprets {name!r} with arity {stored_arity}, "
                    f"DRS uses {preds[name]}"
                )
        if preds[name] == 1:
            exts[slot] = frozenset(t[0] for t in stored)
        else:
            exts[slot] = stored
    return tuple(exts)


def _domains_by_sort(model: Model) -> dict[str, tuple]:
    if model.sorts is None:
        return {SORT_ENTITY: model.domain, SORT_EVENT: model.domain}
    return {
        sort: tuple(d for d in model.domain if model.sorts.get(d, sort) == sort)
        for sort in (SORT_ENTITY, SORT_EVENT)
    }


def verify(k: Drs, model: Model) -> bool:
    """Standard DRT truth: some embedding of the top universe satisfies all
    conditions, implications quantifying universally over their antecedents."""
    if not is_proper(k):
        raise ImproperDrsError("verify requires a proper DRS")
    preds = collect_predicates(k)
    slot_of = {name: i for i, name in enumerate(sorted(preds))}
    fn = _compile_box(k, slot_of)
    exts = _prepared_extensions(preds, slot_of, model.interpretation)
    return bool(fn(exts, _domains_by_sort(model), {}))


@lru_cache(maxsize=64)
def _extension_options(arity: int, n: int, full_first: bool) -> tuple:
    """Every possible extension of one predicate over a domain of size n.

    Unary extensions are frozensets of individuals, n-ary ones frozensets of
    tuples.  With full_first the options come largest first, which lets
    consistency searches hit a verifying model quickly.
    """
    if arity == 1:
        items: list = list(range(n))
    else:
        items = list(product(range(n), repeat=arity))
    if len(items) > 20:
        raise ModelFormatError(
            f"extension space 2^{len(items)} too large for exhaustive search "
            f"(arity {arity}, domain {n})"
        )
    subsets = []
    for mask in range(2 ** len(items)):
        subsets.append(frozenset(x for i, x in enumerate(items) if mask >> i & 1))
    subsets.sort(key=len, reverse=full_first)
    return tuple(subsets)


# ---------------------------------------------------------------------------
# Grounded evaluation for model enumeration
# ---------------------------------------------------------------------------
# consistent() and entails() quantify over up to millions of candidate
# models.  For a fixed domain size the quantifier structure of a DRS can be
# expanded ("grounded") once into a single boolean expression over extension
# membership tests, compiled to a plain Python function; per-model evaluation
# then short-circuits through that expression.  This is still an exhaustive
# brute-force sweep of the model space, only with the embedding search done
# at compile time.

_GROUND_LIMIT = 400_000  # characters of generated source


def _conj(parts: list[str]) -> str:
    parts = [p for p in parts if p != "True"]
    if any(p == "False" for p in parts):
        return "False"
    return "(" + " and ".join(parts) + ")" if parts else "True"


def _disj(parts: list[str]) -> str:
    parts = [p for p in parts if p != "False"]
    if any(p == "True" for p in parts):
        return "True"
    return "(" + " or ".join(parts) + ")" if parts else "False"


def _ground_conditions(d: Drs, env: dict, n: int, slot_of: dict[str, int]) -> list[str]:
    parts = []
    for cond in d.conditions:
        if isinstance(cond, Qualia):
            continue
        if isinstance(cond, Pred):
            slot = slot_of[cond.name]
            vals = [env[a] for a in cond.args]
            if len(vals) == 1:
                parts.append(f"{vals[0]} in E{slot}")
            else:
                parts.append(f"({','.join(map(str, vals))}) in E{slot}")
        elif isinstance(cond, Eq):
            parts.append("True" if env[cond.left] == env[cond.right] else "False")
        elif isinstance(cond, Neg):
            inner = _ground_exists(cond.inner, env, n, slot_of)
            parts.append(
                "False" if inner == "True" else "True" if inner == "False"
                else f"not {inner}"
            )
        elif isinstance(cond, Disj):
            parts.append(_disj([
                _ground_exists(cond.left, env, n, slot_of),
                _ground_exists(cond.right, env, n, slot_of),
            ]))
        elif isinstance(cond, Impl):
            sub = []
            for combo in product(range(n), repeat=len(cond.antecedent.universe)):
                env2 = dict(env)
                env2.update(zip(cond.antecedent.universe, combo))
                ant = _conj(_ground_conditions(cond.antecedent, env2, n, slot_of))
                cons = _ground_exists(cond.consequent, env2, n, slot_of)
                if ant == "False" or cons == "True":
                    continue
                sub.append(cons if ant == "True" else f"(not {ant} or {cons})")
            parts.append(_conj(sub))
        elif isinstance(cond, Alpha):
            raise ImproperDrsError("cannot evaluate an unresolved anaphoric condition")
        else:
            raise ImproperDrsError(f"cannot evaluate condition {cond!r}")
    return parts


def _ground_exists(d: Drs, env: dict, n: int, slot_of: dict[str, int]) -> str:
    options = []
    for combo in product(range(n), repeat=len(d.universe)):
        env2 = dict(env)
        env2.update(zip(d.universe, combo))
        options.append(_conj(_ground_conditions(d, env2, n, slot_of)))
    return _disj(options)


def _compile_grounded(k: Drs, n: int, slot_of: dict[str, int]) -> Callable:
    expr = _ground_exists(k, {}, n, slot_of)
    args = ", ".join(f"E{i}" for i in range(len(slot_of)))
    source = f"def _grounded({args}):\n    return {expr}\n"
    if len(source) > _GROUND_LIMIT:
        raise ModelFormatError(
            f"DRS too large to ground exhaustively at domain size {n}"
        )
    namespace: dict = {}
    exec(compile(source, "<grounded-drs>", "exec"), namespace)
    return namespace["_grounded"]


def _model_space(preds: dict[str, int], slot_of: dict[str, int], n: int, full_first: bool):
    names = sorted(slot_of, key=slot_of.get)
    options = [_extension_options(preds[name], n, full_first) for name in names]
    return product(*options)


def consistent(k: Drs, bound: int) -> bool:
    """True iff some model with domain size <= bound verifies ``k``.

    Only predicates occurring in ``k`` are instantiated; enumeration starts
    from full extensions so satisfiable DRSs are confirmed quickly.
    Monotone in the bound.
    """
    if not is_proper(k):
        raise ImproperDrsError("consistent requires a proper DRS")
    preds = collect_predicates(k)
    slot_of = {name: i for i, name in enumerate(sorted(preds))}
    for n in range(1, max(bound, 0) + 1):
        fn = _compile_grounded(k, n, slot_of)
        for exts in _model_space(preds, slot_of, n, full_first=True):
            if fn(*exts):
                return True
    return False


def entails(k1: Drs, k2: Drs, bound: int) -> bool:
    """True iff every model of size <= bound verifying ``k1`` verifies ``k2``."""
    for k in (k1, k2):
        if not is_proper(k):
            raise ImproperDrsError("entails requires proper DRSs")
    preds = collect_predicates(k1)
    for name, arity in collect_predicates(k2).items():
        if preds.setdefault(name, arity) != arity:
            raise ModelFormatError(f"predicate {name!r} used with two arities")
    slot_of = {name: i for i, name in enumerate(sorted(preds))}
    for n in range(1, max(bound, 0) + 1):
        f1 = _compile_grounded(k1, n, slot_of)
        f2 = _compile_grounded(k2, n, slot_of)
        for exts in _model_space(preds, slot_of, n, full_first=False):
            if f1(*exts) and not f2(*exts):
                return False
    return True
