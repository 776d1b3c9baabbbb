"""Seeded random generators and systematic enumerations for property suites.

Everything is driven by an explicit random.Random, so case counts and
failures are reproducible.
"""
import random

from qdrt.drs import (
    Alpha,
    Disj,
    Drs,
    Eq,
    Impl,
    Marker,
    MarkerFactory,
    Neg,
    Pred,
    Qualia,
    QualiaRole,
    is_proper,
)

UNARY = ("p", "q", "r", "s")
BINARY = ("rel", "near")


def random_drs(
    rng: random.Random,
    factory: MarkerFactory,
    depth: int = 2,
    outer: tuple[Marker, ...] = (),
    allow_alpha: bool = False,
    allow_qualia: bool = True,
) -> Drs:
    """A small well-bound DRS: conditions only use accessible markers, so the
    result is proper whenever allow_alpha is off."""
    universe = tuple(factory.entity() for _ in range(rng.randint(0, 2)))
    scope = outer + universe
    conds = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if not scope or kind < 0.55 or depth == 0:
            if not scope:
                break
            if len(scope) >= 2 and rng.random() < 0.3:
                a, b = rng.choice(scope), rng.choice(scope)
                conds.append(Pred(rng.choice(BINARY), (a, b)))
            else:
                conds.append(Pred(rng.choice(UNARY), (rng.choice(scope),)))
        elif kind < 0.70:
            ant = random_drs(rng, factory, depth - 1, scope, allow_alpha, allow_qualia)
            cons = random_drs(rng, factory, depth - 1, scope + ant.universe,
                              allow_alpha, allow_qualia)
            conds.append(Impl(ant, cons))
        elif kind < 0.80:
            conds.append(Neg(random_drs(rng, factory, depth - 1, scope,
                                        allow_alpha, allow_qualia)))
        elif kind < 0.88:
            conds.append(Disj(
                random_drs(rng, factory, depth - 1, scope, allow_alpha, allow_qualia),
                random_drs(rng, factory, depth - 1, scope, allow_alpha, allow_qualia),
            ))
        elif allow_alpha and kind < 0.94:
            inner = Drs((factory.entity(),), ())
            m = inner.universe[0]
            conds.append(Alpha(Drs((m,), (Pred(rng.choice(UNARY), (m,)),))))
        elif allow_qualia:
            m = factory.entity()
            role = rng.choice(list(QualiaRole))
            conds.append(Qualia(role, Drs((m,), (Pred(rng.choice(UNARY), (m,)),))))
    return Drs(universe, conds)


def depth2_family():
    """A systematic family of proper DRSs of depth <= 2 over two unary
    predicates p, q and at most two markers per box."""
    x1, x2 = Marker("entity", 1), Marker("entity", 2)
    atoms = [
        (),
        (Pred("p", (x1,)),),
        (Pred("q", (x1,)),),
        (Pred("p", (x1,)), Pred("q", (x1,))),
    ]
    leaves = []
    for universe in ((), (x1,), (x1, x2)):
        for conds in atoms:
            if all(a in universe for c in conds for a in c.args):
                leaves.append(Drs(universe, conds))
    leaves.append(Drs((x1, x2), (Pred("p", (x1,)), Eq(x1, x2))))
    out = list(leaves)
    for a in leaves[:8]:
        for b in leaves[:8]:
            out.append(Drs((), (Impl(a, b),)))
            out.append(Drs((x1,), (Pred("p", (x1,)), Impl(a, b))))
            out.append(Drs((), (Disj(a, b),)))
    for a in leaves:
        out.append(Drs((), (Neg(a),)))
        out.append(Drs((x1,), (Pred("q", (x1,)), Neg(a))))
    return [k for k in out if is_proper(k)]


def random_resolvable(rng: random.Random, factory: MarkerFactory):
    """One alpha condition in a configuration where resolution succeeds.

    Returns (root, expected mechanism).  The anaphor's restrictor either
    matches the antecedent box (link), matches only qualia content (bridge),
    or matches nothing (accommodate).
    """
    kind = rng.choice(("link", "link", "bridge", "bridge", "accommodate"))
    x = factory.entity()
    z = factory.entity()
    y = factory.entity()
    head = rng.choice(("bar", "shop", "hotel"))
    dependent = rng.choice(("keeper", "owner"))
    ant_conds = [Pred(head, (x,))]
    has_quale = kind == "bridge" or rng.random() < 0.4
    if has_quale:
        ant_conds.append(
            Qualia(
                rng.choice(list(QualiaRole)),
                Drs((z,), (Pred(dependent, (z,)), Pred("of", (z, x)))),
            )
        )
    if kind == "link":
        restrictor = head
    elif kind == "bridge":
        restrictor = dependent
    else:
        restrictor = "stranger"
    alpha = Alpha(Drs((y,), (Pred(restrictor, (y,)),)))
    cons = Drs((), (alpha, Pred("waits", (y,))))
    if rng.random() < 0.5:
        root = Drs((), (Impl(Drs((x,) + (() if not has_quale else ()), ant_conds), cons),))
        ant_universe = (x,)
        root = Drs((), (Impl(Drs(ant_universe, ant_conds), cons),))
    else:
        # flat variant: antecedent material and anaphor share the top box
        root = Drs((x,), tuple(ant_conds) + (alpha, Pred("waits", (y,))))
    return root, kind
