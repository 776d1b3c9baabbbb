"""Hand-built golden boxes for the four running examples.

Markers here are chosen freely; equality with pipeline output is always
checked up to marker renaming (alpha_equal).
"""
from qdrt.drs import Alpha, Drs, Eq, Impl, Marker, Pred, Qualia, QualiaRole
from qdrt.terms import E, LambdaDrs, Leaf


def ent(i: int) -> Marker:
    return Marker("entity", i)


def ev(i: int) -> Marker:
    return Marker("event", i)


# -- (2) "When I invite a celebrity, the celebrity never comes." -----------

def celebrity_unresolved() -> Drs:
    x, y = ent(1), ent(2)
    ant = Drs((x,), (Pred("celebrity", (x,)), Pred("I-invite", (x,))))
    cons = Drs((), (Alpha(Drs((y,), (Pred("celebrity", (y,)),))),
                    Pred("never-comes", (y,))))
    return Drs((), (Impl(ant, cons),))


def celebrity_resolved() -> Drs:
    x, y = ent(1), ent(2)
    ant = Drs((x,), (Pred("celebrity", (x,)), Pred("I-invite", (x,))))
    cons = Drs((y,), (Pred("celebrity", (y,)), Eq(y, x), Pred("never-comes", (y,))))
    return Drs((), (Impl(ant, cons),))


# -- (3) "When I go to a bar, the barkeeper always throws me out." ---------

def bar_quale(x: Marker, z: Marker) -> Qualia:
    return Qualia(QualiaRole.CONSTITUTIVE,
                  Drs((z,), (Pred("barkeeper", (z,)), Pred("of", (z, x)))))


def barkeeper_unresolved() -> Drs:
    x, y, z = ent(1), ent(2), ent(3)
    ant = Drs((x,), (Pred("bar", (x,)), bar_quale(x, z), Pred("I-go-to", (x,))))
    cons = Drs((), (Alpha(Drs((y,), (Pred("barkeeper", (y,)),))),
                    Pred("always-throws-me-out", (y,))))
    return Drs((), (Impl(ant, cons),))


def barkeeper_resolved() -> Drs:
    x, y, z = ent(1), ent(2), ent(3)
    ant = Drs((x, z), (Pred("bar", (x,)), bar_quale(x, z), Pred("I-go-to", (x,)),
                       Pred("barkeeper", (z,)), Pred("of", (z, x))))
    cons = Drs((y,), (Pred("barkeeper", (y,)), Eq(y, z),
                      Pred("always-throws-me-out", (y,))))
    return Drs((), (Impl(ant, cons),))


# -- (1) "When I give a party, the king of france always attends it." ------

def king_unresolved() -> Drs:
    x, y, z = ent(1), ent(2), ent(3)
    ant = Drs((x,), (Pred("party", (x,)), Pred("I-give", (x,))))
    cons = Drs((), (Alpha(Drs((y,), (Pred("king-of-france", (y,)),))),
                    Alpha(Drs((z,), ())),
                    Pred("always-attends", (y, z))))
    return Drs((), (Impl(ant, cons),))


def king_resolved() -> Drs:
    x, y, z = ent(1), ent(2), ent(3)
    ant = Drs((x,), (Pred("party", (x,)), Pred("I-give", (x,))))
    cons = Drs((z,), (Eq(z, x), Pred("always-attends", (y, z))))
    return Drs((y,), (Pred("king-of-france", (y,)), Impl(ant, cons)))


# -- (4) "When I go to a playground, the barkeeper always throws me out." --

def playground_unresolved() -> Drs:
    x, y = ent(1), ent(2)
    ant = Drs((x,), (Pred("playground", (x,)), Pred("I-go-to", (x,))))
    cons = Drs((), (Alpha(Drs((y,), (Pred("barkeeper", (y,)),))),
                    Pred("always-throws-me-out", (y,))))
    return Drs((), (Impl(ant, cons),))


def playground_resolved() -> Drs:
    x, y = ent(1), ent(2)
    ant = Drs((x,), (Pred("playground", (x,)), Pred("I-go-to", (x,))))
    cons = Drs((), (Pred("always-throws-me-out", (y,)),))
    return Drs((y,), (Pred("barkeeper", (y,)), Impl(ant, cons)))


# -- "John begins a book": the two coerced sentence-DRSs -------------------

def _event_lambda(pred: str, start: int):
    y, x, e = ent(start), ent(start + 1), ev(start + 2)
    return LambdaDrs(((y, E), (x, E), (e, E)),
                     Leaf(Drs((), (Pred(pred, (e,)), Pred("agent", (e, x)),
                                   Pred("theme", (e, y))))))


def begins_book_sentence(event_pred: str) -> Drs:
    """The paper's final box with the chosen coercion (write or read)."""
    e, y, x, big_z = ev(1), ent(2), ent(3), ent(4)
    return Drs(
        (e, y),
        (
            Pred("now", (e,)),
            Alpha(Drs((x,), (Pred("john", (x,)),))),
            Pred("begin", (e,)),
            Pred(event_pred, (e,)),
            Pred("agent", (e, x)),
            Pred("theme", (e, y)),
            Pred("book", (y,)),
            Qualia(QualiaRole.FORMAL, Drs((), (Pred("info_cont", (y,)),))),
            Qualia(
                QualiaRole.CONSTITUTIVE,
                Drs((big_z,), (Pred("sections", (big_z,)), Pred("has", (y, big_z)))),
            ),
            Qualia(QualiaRole.AGENTIVE, _event_lambda("write", 10)),
            Qualia(QualiaRole.TELIC, _event_lambda("read", 20)),
        ),
    )
