"""Lexical entries with qualia structures, and the on-disk lexicon format.

The builtin fragment covers the determiners, nouns, verbs and function words
of the engine's sentence fragment.  Nouns are the only category that carries
qualia information.  A lexicon file can add or override entries; file entries
win on conflict.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .drs import (
    Alpha,
    Condition,
    Drs,
    Marker,
    MarkerFactory,
    Pred,
    Qualia,
    QualiaRole,
    child_boxes,
)
from .errors import LexiconError
from .composition import type_of
from .terms import App, CondTerm, E, EET, ET, Fn, LambdaDrs, Leaf, Merge, SemType, T, Term, Var

CATEGORIES = ("Det", "N", "PN", "V_trans", "V_asp", "Pron", "Adv", "Tense-marker", "Conj")

NP_TYPE = Fn(ET, T)
DET_TYPE = Fn(ET, NP_TYPE)


@dataclass(frozen=True)
class LexicalEntry:
    """One word sense: surface form, category, typed semantics template.

    The semantics is a template; instantiate() renames its markers to fresh
    ones from the derivation's factory before composition.
    """

    form: str
    category: str
    semantics: Term
    signature: SemType
    origin: str = "builtin"

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise LexiconError(f"unknown category {self.category!r} for {self.form!r}")

    @property
    def parts(self) -> tuple[str, ...]:
        """Surface parts of a hyphenated (multiword / particle) form."""
        return tuple(self.form.split("-"))


def instantiate(entry: LexicalEntry, factory: MarkerFactory) -> Term:
    """A fresh-marker copy of the entry's semantics."""
    markers = sorted(entry.semantics.all_markers())
    mapping = {m: factory.fresh(m.sort) for m in markers}
    return entry.semantics.rename_markers(mapping)


def predicates_used(term: Term) -> dict[str, set[int]]:
    """Every predicate symbol occurring in a term, with the arities seen."""
    out: dict[str, set[int]] = {}

    def note(p: Pred) -> None:
        out.setdefault(p.name, set()).add(len(p.args))

    def walk_drs(d: Drs) -> None:
        for cond in d.conditions:
            if isinstance(cond, Pred):
                note(cond)
            elif isinstance(cond, Qualia) and not isinstance(cond.payload, Drs):
                walk_term(cond.payload)
            else:
                for _b, child in child_boxes(cond):
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
    return out


def _entry_has_qualia(entry: LexicalEntry) -> bool:
    found = False

    def walk_drs(d: Drs) -> bool:
        for cond in d.conditions:
            if isinstance(cond, Qualia):
                return True
            for _b, child in child_boxes(cond):
                if walk_drs(child):
                    return True
        return False

    def walk_term(t: Term) -> bool:
        if isinstance(t, Leaf):
            return walk_drs(t.drs)
        if isinstance(t, App):
            return walk_term(t.fn) or walk_term(t.arg)
        if isinstance(t, Merge):
            return walk_term(t.left) or walk_term(t.right)
        if isinstance(t, CondTerm):
            return any(walk_term(op) for op in t.operands)
        if isinstance(t, LambdaDrs):
            return walk_term(t.body)
        return False

    return walk_term(entry.semantics)


class Lexicon:
    """Immutable multi-map from surface form to entries, plus the predicate
    arity table every entry is checked against."""

    def __init__(self, entries: Iterable[LexicalEntry], arity: dict[str, int]):
        emap: dict[str, tuple[LexicalEntry, ...]] = {}
        for e in entries:
            emap[e.form] = emap.get(e.form, ()) + (e,)
        self._entries = emap
        self._arity = dict(arity)
        self._validate()

    def _validate(self) -> None:
        for form, entries in self._entries.items():
            for e in entries:
                sig = type_of(e.semantics)
                if sig != e.signature:
                    raise LexiconError(
                        f"entry {form!r} has semantics of type {sig}, declared {e.signature}"
                    )
                if e.category != "N" and _entry_has_qualia(e):
                    raise LexiconError(f"only nouns may carry qualia: {form!r}")
                for name, arities in predicates_used(e.semantics).items():
                    if name not in self._arity:
                        raise LexiconError(
                            f"entry {form!r} uses undeclared predicate {name!r}"
                        )
                    for a in arities:
                        if a != self._arity[name]:
                            raise LexiconError(
                                f"entry {form!r} uses {name!r} with arity {a}, "
                                f"declared {self._arity[name]}"
                            )

    # -- read access -----------------------------------------------------

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(self._entries)

    @property
    def arity(self) -> dict[str, int]:
        return dict(self._arity)

    def has(self, form: str) -> bool:
        return form in self._entries

    def lookup(self, form: str) -> LexicalEntry:
        try:
            return self._entries[form][0]
        except KeyError:
            raise LexiconError(f"unknown word: {form!r}", token=form) from None

    def lookup_all(self, form: str) -> tuple[LexicalEntry, ...]:
        return self._entries.get(form, ())

    def by_category(self, category: str) -> tuple[LexicalEntry, ...]:
        return tuple(e for es in self._entries.values() for e in es if e.category == category)

    def bridgeable_predicates(self) -> frozenset[str]:
        """Predicate symbols that occur inside some entry's qualia payload.

        A definite whose restrictor uses such a predicate advertises lexical
        content that normally licenses a bridge; accommodating it instead is
        flagged as a felicity risk.
        """
        out: set[str] = set()

        def walk_drs(d: Drs, inside: bool) -> None:
            for cond in d.conditions:
                if isinstance(cond, Pred):
                    if inside:
                        out.add(cond.name)
                elif isinstance(cond, Qualia):
                    if isinstance(cond.payload, Drs):
                        walk_drs(cond.payload, True)
                    else:
                        walk_term(cond.payload, True)
                else:
                    for _b, child in child_boxes(cond):
                        walk_drs(child, inside)

        def walk_term(t: Term, inside: bool) -> None:
            if isinstance(t, Leaf):
                walk_drs(t.drs, inside)
            elif isinstance(t, App):
                walk_term(t.fn, inside)
                walk_term(t.arg, inside)
            elif isinstance(t, Merge):
                walk_term(t.left, inside)
                walk_term(t.right, inside)
            elif isinstance(t, CondTerm):
                for op in t.operands:
                    walk_term(op, inside)
            elif isinstance(t, LambdaDrs):
                walk_term(t.body, inside)

        for es in self._entries.values():
            for e in es:
                walk_term(e.semantics, False)
        return frozenset(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._entries == other._entries and self._arity == other._arity

    def __repr__(self) -> str:
        return f"Lexicon({len(self._entries)} forms, {len(self._arity)} predicates)"


# ---------------------------------------------------------------------------
# Builtin fragment
# ---------------------------------------------------------------------------

BUILTIN_ARITIES: dict[str, int] = {
    # nouns
    "book": 1, "celebrity": 1, "bar": 1, "playground": 1, "party": 1,
    "barkeeper": 1, "king-of-france": 1,
    # proper names
    "john": 1,
    # qualia vocabulary
    "info_cont": 1, "sections": 1, "has": 2, "of": 2,
    # event predicates and thematic roles
    "write": 1, "read": 1, "begin": 1, "now": 1, "agent": 2, "theme": 2,
    # relational verbs
    "invite": 2, "go-to": 2, "give": 2, "attend": 2, "throw-out": 2, "come": 1,
    # lexicalized box-notation combinations
    "I-invite": 1, "I-go-to": 1, "I-give": 1,
    "never-comes": 1, "always-attends": 2, "always-throws-me-out": 1,
}


def _event_verb_semantics(pred: str, start: int = 1) -> Term:
    f = MarkerFactory(start)
    y, x, e = f.entity(), f.entity(), f.event()
    body = Leaf(Drs((), (Pred(pred, (e,)), Pred("agent", (e, x)), Pred("theme", (e, y)))))
    return LambdaDrs(((y, E), (x, E), (e, E)), body)


def _noun_semantics(pred: str, qualia: Iterable[tuple[QualiaRole, object]] = ()) -> Term:
    """λz.<{z}, {pred(z), qualia...}>; str payloads refer to the noun variable
    via a 'self' placeholder marker replaced here."""
    f = MarkerFactory(100)  # payload templates below use indexes < 100
    z = f.entity()
    conds: list[Condition] = [Pred(pred, (z,))]
    for role, payload in qualia:
        if callable(payload):
            payload = payload(z)
        conds.append(Qualia(role, payload))
    return LambdaDrs(((z, E),), Leaf(Drs((z,), conds)))


def _builtin_entries() -> list[LexicalEntry]:
    entries: list[LexicalEntry] = []

    def add(form: str, category: str, semantics: Term, signature: SemType) -> None:
        entries.append(LexicalEntry(form, category, semantics, signature))

    # -- determiners ----------------------------------------------------
    f = MarkerFactory()
    x, p1, p2 = f.entity(), f.entity(), f.entity()
    add("a", "Det",
        LambdaDrs(((p1, ET), (p2, ET)),
                  Merge(Merge(Leaf(Drs((x,), ())), App(Var(p1, ET), Var(x, E))),
                        App(Var(p2, ET), Var(x, E)))),
        DET_TYPE)

    f = MarkerFactory()
    x, p1, p2 = f.entity(), f.entity(), f.entity()
    add("the", "Det",
        LambdaDrs(((p1, ET), (p2, ET)),
                  Merge(CondTerm("alpha",
                                 (Merge(Leaf(Drs((x,), ())), App(Var(p1, ET), Var(x, E))),)),
                        App(Var(p2, ET), Var(x, E)))),
        DET_TYPE)

    f = MarkerFactory()
    x, p1, p2 = f.entity(), f.entity(), f.entity()
    add("every", "Det",
        LambdaDrs(((p1, ET), (p2, ET)),
                  CondTerm("impl",
                           (Merge(Leaf(Drs((x,), ())), App(Var(p1, ET), Var(x, E))),
                            App(Var(p2, ET), Var(x, E))))),
        DET_TYPE)

    # -- proper names (anaphoric, no qualia) ------------------------------
    f = MarkerFactory()
    x, p = f.entity(), f.entity()
    add("john", "PN",
        LambdaDrs(((p, ET),),
                  Merge(Leaf(Drs((), (Alpha(Drs((x,), (Pred("john", (x,)),))),))),
                        App(Var(p, ET), Var(x, E)))),
        NP_TYPE)

    # -- pronouns: empty-restrictor anaphors ------------------------------
    for form in ("i", "he", "it", "me"):
        f = MarkerFactory()
        z, p = f.entity(), f.entity()
        add(form, "Pron",
            LambdaDrs(((p, ET),),
                      Merge(Leaf(Drs((), (Alpha(Drs((z,), ())),))),
                            App(Var(p, ET), Var(z, E)))),
            NP_TYPE)

    # -- nouns ------------------------------------------------------------
    def constitutive_bar(z: Marker) -> Drs:
        f2 = MarkerFactory(10)
        k = f2.entity()
        return Drs((k,), (Pred("barkeeper", (k,)), Pred("of", (k, z))))

    def formal_book(z: Marker) -> Drs:
        return Drs((), (Pred("info_cont", (z,)),))

    def constitutive_book(z: Marker) -> Drs:
        f2 = MarkerFactory(10)
        k = f2.entity()
        return Drs((k,), (Pred("sections", (k,)), Pred("has", (z, k))))

    add("book", "N",
        _noun_semantics("book", (
            (QualiaRole.FORMAL, formal_book),
            (QualiaRole.CONSTITUTIVE, constitutive_book),
            (QualiaRole.AGENTIVE, _event_verb_semantics("write", start=20)),
            (QualiaRole.TELIC, _event_verb_semantics("read", start=30)),
        )),
        ET)
    add("bar", "N",
        _noun_semantics("bar", ((QualiaRole.CONSTITUTIVE, constitutive_bar),)),
        ET)
    for noun in ("celebrity", "playground", "party", "barkeeper", "king-of-france"):
        add(noun, "N", _noun_semantics(noun), ET)

    # -- event verbs -------------------------------------------------------
    add("write", "V_trans", _event_verb_semantics("write"), Fn(E, EET))
    add("read", "V_trans", _event_verb_semantics("read"), Fn(E, EET))

    # -- aspectual verb: an event-type modifier ---------------------------
    f = MarkerFactory()
    ev, x, e = f.entity(), f.entity(), f.event()
    add("begin", "V_asp",
        LambdaDrs(((ev, EET), (x, E), (e, E)),
                  Merge(Leaf(Drs((), (Pred("begin", (e,)),))),
                        App(App(Var(ev, EET), Var(x, E)), Var(e, E)))),
        Fn(EET, EET))

    # -- tense: binds off the event variable ------------------------------
    f = MarkerFactory()
    ev, e = f.entity(), f.event()
    add("pres", "Tense-marker",
        LambdaDrs(((ev, ET),),
                  Merge(Leaf(Drs((e,), (Pred("now", (e,)),))), App(Var(ev, ET), Var(e, E)))),
        Fn(ET, T))

    # -- relational verbs (object parameter bound first) -------------------
    for verb in ("invite", "go-to", "give", "attend", "throw-out"):
        f = MarkerFactory()
        y, x = f.entity(), f.entity()
        add(verb, "V_trans",
            LambdaDrs(((y, E), (x, E)), Leaf(Drs((), (Pred(verb, (x, y)),)))),
            Fn(E, ET))
    f = MarkerFactory()
    x = f.entity()
    add("come", "V_trans",
        LambdaDrs(((x, E),), Leaf(Drs((), (Pred("come", (x,)),)))),
        ET)

    # -- adverbs: contribute to lexicalized predicate names only ----------
    for adv in ("always", "never"):
        f = MarkerFactory()
        p = f.entity()
        add(adv, "Adv", LambdaDrs(((p, ET),), Var(p, ET)), Fn(ET, ET))

    # -- conditional conjunction -------------------------------------------
    for conj in ("when", "if"):
        f = MarkerFactory()
        s1, s2 = f.entity(), f.entity()
        add(conj, "Conj",
            LambdaDrs(((s1, T), (s2, T)), CondTerm("impl", (Var(s1, T), Var(s2, T)))),
            Fn(T, Fn(T, T)))

    return entries


_BUILTIN: Lexicon | None = None


def builtin_paper_fragment() -> Lexicon:
    """The closed fragment the engine ships with."""
    global _BUILTIN
    if _BUILTIN is None:
        _BUILTIN = Lexicon(_builtin_entries(), BUILTIN_ARITIES)
    return _BUILTIN


# ---------------------------------------------------------------------------
# Lexicon file format
# ---------------------------------------------------------------------------
#
#   # comment
#   predicate <name> <arity>
#   <category> <form> { [qualia <role> { m1 m2 | pred(arg, ...), ... }] ... }
#
# Categories: noun, pn, v_trans, v_asp, pron, adv.  Inside qualia blocks,
# `self` names the noun's bound variable; other identifiers name the payload's
# own (entity-sorted) markers.  Only nouns accept qualia blocks.

_FILE_CATEGORIES = {
    "noun": "N",
    "pn": "PN",
    "v_trans": "V_trans",
    "v_asp": "V_asp",
    "pron": "Pron",
    "adv": "Adv",
}
_ROLES = {r.value: r for r in QualiaRole}

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*|\d+|[{}()|,]|\S")


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _tokenize_file(source: str) -> list[_Tok]:
    toks: list[_Tok] = []
    for ln, line in enumerate(source.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(line):
            toks.append(_Tok(m.group(0), ln, m.start() + 1))
    return toks


class _FileParser:
    def __init__(self, source: str):
        self.toks = _tokenize_file(source)
        self.pos = 0

    def error(self, message: str) -> LexiconError:
        if self.pos < len(self.toks):
            t = self.toks[self.pos]
            return LexiconError(f"{message} at line {t.line}, column {t.col}",
                                line=t.line, column=t.col)
        return LexiconError(f"{message} at end of input")

    def peek(self) -> str | None:
        return self.toks[self.pos].text if self.pos < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        if self.pos >= len(self.toks):
            raise self.error(f"expected {expected!r}" if expected else "unexpected end")
        t = self.toks[self.pos]
        if expected is not None and t.text != expected:
            raise self.error(f"expected {expected!r}, found {t.text!r}")
        self.pos += 1
        return t.text

    def parse(self) -> tuple[list[dict], dict[str, int]]:
        entries: list[dict] = []
        arities: dict[str, int] = {}
        while self.peek() is not None:
            word = self.take()
            if word == "predicate":
                name = self.take()
                count = self.take()
                if not count.isdigit():
                    raise self.error("predicate arity must be a number")
                arities[name] = int(count)
            elif word in _FILE_CATEGORIES:
                entries.append(self.entry(word))
            else:
                self.pos -= 1
                raise self.error(f"expected a category or 'predicate', found {word!r}")
        return entries, arities

    def entry(self, category: str) -> dict:
        form = self.take()
        self.take("{")
        qualia: list[tuple[QualiaRole, tuple[str, ...], list[tuple[str, tuple[str, ...]]]]] = []
        while self.peek() != "}":
            self.take("qualia")
            role_name = self.take()
            if role_name not in _ROLES:
                self.pos -= 1
                raise self.error(f"unknown qualia role {role_name!r}")
            if category != "noun":
                raise self.error("only nouns may carry qualia")
            self.take("{")
            markers: list[str] = []
            conds: list[tuple[str, tuple[str, ...]]] = []
            # a '|' before any '(' or '}' introduces the payload universe
            probe = self.pos
            saw_bar = False
            while probe < len(self.toks):
                text = self.toks[probe].text
                if text in ("(", "}"):
                    break
                if text == "|":
                    saw_bar = True
                    break
                probe += 1
            if saw_bar:
                while self.peek() != "|":
                    markers.append(self.take())
                self.take("|")
            while self.peek() != "}":
                conds.append(self.condition())
                if self.peek() == ",":
                    self.take(",")
            self.take("}")
            qualia.append((_ROLES[role_name], tuple(markers), conds))
        self.take("}")
        return {"category": category, "form": form, "qualia": qualia}

    def condition(self) -> tuple[str, tuple[str, ...]]:
        name = self.take()
        self.take("(")
        args: list[str] = []
        while self.peek() != ")":
            args.append(self.take())
            if self.peek() == ",":
                self.take(",")
        self.take(")")
        return name, tuple(args)


def _build_file_entry(spec: dict, arity: dict[str, int]) -> LexicalEntry:
    category = spec["category"]
    form = spec["form"]
    if category == "noun":
        if form not in arity:
            raise LexiconError(f"noun {form!r}: predicate {form!r} not declared")
        payloads: list[tuple[QualiaRole, object]] = []
        for role, marker_names, conds in spec["qualia"]:
            def make(z: Marker, marker_names=marker_names, conds=conds) -> Drs:
                f2 = MarkerFactory(10)
                env = {name: f2.entity() for name in marker_names}
                env["self"] = z
                preds = []
                for name, args in conds:
                    if name not in arity:
                        raise LexiconError(
                            f"qualia condition uses undeclared predicate {name!r}"
                        )
                    if len(args) != arity[name]:
                        raise LexiconError(
                            f"predicate {name!r} used with arity {len(args)}, "
                            f"declared {arity[name]}"
                        )
                    marks = []
                    for a in args:
                        if a not in env:
                            raise LexiconError(
                                f"unknown marker {a!r} in qualia condition of {form!r}"
                            )
                        marks.append(env[a])
                    preds.append(Pred(name, tuple(marks)))
                return Drs(tuple(env[n] for n in marker_names), preds)

            payloads.append((role, make))
        return LexicalEntry(form, "N", _noun_semantics(form, payloads), ET, origin="file")
    if spec["qualia"]:
        raise LexiconError("only nouns may carry qualia")
    if category == "pn":
        f = MarkerFactory()
        x, p = f.entity(), f.entity()
        sem = LambdaDrs(((p, ET),),
                        Merge(Leaf(Drs((), (Alpha(Drs((x,), (Pred(form, (x,)),))),))),
                              App(Var(p, ET), Var(x, E))))
        return LexicalEntry(form, "PN", sem, NP_TYPE, origin="file")
    if category == "pron":
        f = MarkerFactory()
        z, p = f.entity(), f.entity()
        sem = LambdaDrs(((p, ET),),
                        Merge(Leaf(Drs((), (Alpha(Drs((z,), ())),))),
                              App(Var(p, ET), Var(z, E))))
        return LexicalEntry(form, "Pron", sem, NP_TYPE, origin="file")
    if category == "v_trans":
        f = MarkerFactory()
        y, x = f.entity(), f.entity()
        sem = LambdaDrs(((y, E), (x, E)), Leaf(Drs((), (Pred(form, (x, y)),))))
        return LexicalEntry(form, "V_trans", sem, Fn(E, ET), origin="file")
    if category == "v_asp":
        f = MarkerFactory()
        ev, x, e = f.entity(), f.entity(), f.event()
        sem = LambdaDrs(((ev, EET), (x, E), (e, E)),
                        Merge(Leaf(Drs((), (Pred(form, (e,)),))),
                              App(App(Var(ev, EET), Var(x, E)), Var(e, E))))
        return LexicalEntry(form, "V_asp", sem, Fn(EET, EET), origin="file")
    if category == "adv":
        f = MarkerFactory()
        p = f.entity()
        sem = LambdaDrs(((p, ET),), Var(p, ET))
        return LexicalEntry(form, "Adv", sem, Fn(ET, ET), origin="file")
    raise LexiconError(f"unsupported category {category!r}")


def load_lexicon(source: str, base: Lexicon | None = None) -> Lexicon:
    """Parse lexicon source and merge it over the builtin fragment.

    File entries replace builtin entries of the same form; file arity
    declarations must not contradict builtin arities.
    """
    if base is None:
        base = builtin_paper_fragment()
    parser = _FileParser(source)
    specs, new_arities = parser.parse()
    arity = base.arity
    for name, a in new_arities.items():
        if name in arity and arity[name] != a:
            raise LexiconError(
                f"predicate {name!r} declared with arity {a}, builtin says {arity[name]}"
            )
        arity[name] = a
    # auto-declare the predicates the auto-built semantics will introduce
    for spec in specs:
        form, cat = spec["form"], spec["category"]
        implied = {"noun": 1, "pn": 1, "v_trans": 2, "v_asp": 1}.get(cat)
        if implied is not None and form not in arity:
            arity[form] = implied
    file_entries = [_build_file_entry(spec, arity) for spec in specs]
    replaced = {e.form for e in file_entries}
    merged = [e for form in base.forms if form not in replaced
              for e in base.lookup_all(form)]
    return Lexicon(merged + file_entries, arity)


def serialize_lexicon(lex: Lexicon) -> str:
    """Serialize the file layer of a lexicon (entries loaded from files).

    Reparsing the output over the builtin fragment reproduces an equal
    lexicon.  Builtin-only lexica serialize to the empty string.
    """
    builtin = builtin_paper_fragment()
    builtin_arity = builtin.arity
    lines: list[str] = []
    for name, a in sorted(lex.arity.items()):
        if builtin_arity.get(name) != a:
            lines.append(f"predicate {name} {a}")
    rev_cat = {v: k for k, v in _FILE_CATEGORIES.items()}
    for form in lex.forms:
        for e in lex.lookup_all(form):
            if e.origin != "file":
                continue
            if e.category == "N":
                lines.append(f"noun {e.form} {{{_serialize_qualia(e)}}}")
            else:
                lines.append(f"{rev_cat[e.category]} {e.form} {{ }}")
    return "\n".join(lines) + ("\n" if lines else "")


def _serialize_qualia(entry: LexicalEntry) -> str:
    sem = entry.semantics
    assert isinstance(sem, LambdaDrs) and isinstance(sem.body, Leaf)
    z = sem.params[0][0]
    blocks: list[str] = []
    for cond in sem.body.drs.conditions:
        if not isinstance(cond, Qualia):
            continue
        payload = cond.payload
        assert isinstance(payload, Drs)
        names = {z: "self"}
        for i, m in enumerate(payload.universe, start=1):
            names[m] = f"m{i}"
        univ = " ".join(names[m] for m in payload.universe)
        conds = ", ".join(
            f"{c.name}({', '.join(names[a] for a in c.args)})"
            for c in payload.conditions
            if isinstance(c, Pred)
        )
        blocks.append(f" qualia {cond.role.value} {{ {univ} | {conds} }}")
    return " ".join(blocks) + " " if blocks else " "
