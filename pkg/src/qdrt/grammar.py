"""Tokenizer, fragment parser, and the parse-merge-resolve pipeline.

The grammar is a hand-written recursive descent over a closed category set:

    Sentence -> when/if S , S | S
    S        -> Subject VP
    Subject  -> NP ; NP -> Det N | PN | Pron
    VP       -> [Adv] V_asp NP | [Adv] V [NP] | [Adv] V me Particle

Box-notation compressions from the lexicalized fragment: a first person
subject folds into the predicate name (``I invite`` -> I-invite(y) over the
object), an adverb folds into the predicate name with the surface verb form
(``never comes`` -> never-comes(y)), and a ``me`` object of a particle verb is
absorbed (``always throws me out`` -> always-throws-me-out(y)).  Without an
adverb the base form is used.  Past forms normalize to present semantics.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .composition import beta_reduce, compose_detailed, type_of
from .drs import Drs, EMPTY_DRS, MarkerFactory, Pred, is_proper, merge
from .errors import CompositionError, LexiconError, NoParseError, ResolutionError
from .lexicon import LexicalEntry, Lexicon, instantiate
from .resolution import Reading, resolve_all
from .terms import App, E, EET, ET, Fn, LambdaDrs, Leaf, T, Term

#: Irregular past forms of the fragment, normalized to base forms at parse time.
PAST_TO_BASE = {
    "began": "begin", "invited": "invite", "came": "come", "went": "go",
    "gave": "give", "threw": "throw", "attended": "attend", "wrote": "write",
}

#: Third person singular present forms of the fragment.
THIRD_SG_TO_BASE = {
    "begins": "begin", "invites": "invite", "comes": "come", "goes": "go",
    "gives": "give", "throws": "throw", "attends": "attend", "writes": "write",
    "reads": "read",
}

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'-]*|,")


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; the clause comma is kept as a ',' token."""
    return [m.group(0).lower() for m in _WORD_RE.finditer(text)]


def base_form(token: str) -> str:
    return PAST_TO_BASE.get(token, THIRD_SG_TO_BASE.get(token, token))


@dataclass(frozen=True)
class Derivation:
    """A (sub)derivation: composition steps applied to lexical leaves.

    ``step`` records how the node's semantics was obtained: "lexical",
    "apply" (direct composition), "coerced:<role>", or a grammar rule name.
    """

    label: str
    semantics: Term
    children: tuple["Derivation", ...] = ()
    entry: LexicalEntry | None = None
    span: tuple[str, ...] = ()
    step: str = "lexical"
    quale: Term | None = None

    def leaves(self) -> list["Derivation"]:
        if not self.children:
            return [self]
        out: list[Derivation] = []
        for c in self.children:
            out.extend(c.leaves())
        return out


@dataclass
class DiscourseState:
    """Pipeline state: the proper main DRS plus the per-sentence history."""

    main_drs: Drs = EMPTY_DRS
    history: tuple[tuple[str, Reading], ...] = ()
    alternatives: tuple[tuple[Reading, ...], ...] = ()


def _word(entry: LexicalEntry, factory: MarkerFactory, *tokens: str) -> Derivation:
    return Derivation("word", instantiate(entry, factory), entry=entry, span=tuple(tokens))


def _compose_node(
    label: str,
    functor: Derivation,
    argument: Derivation,
    factory: MarkerFactory,
) -> list[Derivation]:
    """All compositions of two derivations, forking on coercion choices."""
    results = compose_detailed(functor.semantics, argument.semantics, factory)
    out = []
    for term, coercion in results:
        if coercion is None:
            out.append(Derivation(label, term, (functor, argument), step="apply"))
        else:
            role, payload = coercion
            out.append(
                Derivation(label, term, (functor, argument),
                           step=f"coerced:{role.value}", quale=payload)
            )
    return out


class _SentenceParser:
    def __init__(self, tokens: Sequence[str], lexicon: Lexicon, factory: MarkerFactory):
        self.tokens = list(tokens)
        self.lexicon = lexicon
        self.factory = factory
        self.longest = 0
        self.failure: CompositionError | None = None

    def note(self, pos: int) -> None:
        self.longest = max(self.longest, pos)

    # -- lexical access ---------------------------------------------------

    def entry_at(self, pos: int, category: str) -> LexicalEntry | None:
        if pos >= len(self.tokens):
            return None
        for e in self.lexicon.lookup_all(self.tokens[pos]):
            if e.category == category:
                return e
        return None

    def noun_at(self, pos: int) -> tuple[LexicalEntry, int] | None:
        for length in (3, 2, 1):
            if pos + length > len(self.tokens):
                continue
            form = "-".join(self.tokens[pos : pos + length])
            for e in self.lexicon.lookup_all(form):
                if e.category == "N":
                    return e, length
        return None

    def verb_at(self, pos: int) -> list[tuple[LexicalEntry, int, tuple[str, ...]]]:
        """Matches of (entry, tokens consumed, surface tokens) at pos, longest first."""
        if pos >= len(self.tokens):
            return []
        base = base_form(self.tokens[pos])
        out = []
        for e in self.lexicon.by_category("V_trans") + self.lexicon.by_category("V_asp"):
            parts = e.parts
            if parts[0] != base:
                continue
            rest = parts[1:]
            if rest and tuple(self.tokens[pos + 1 : pos + 1 + len(rest)]) == rest:
                out.append((e, 1 + len(rest), tuple(self.tokens[pos : pos + 1 + len(rest)])))
            out.append((e, 1, (self.tokens[pos],)))
        # prefer longer (particle-inclusive) matches, drop particle-verb
        # single-token matches unless the particle shows up later ("me out")
        out.sort(key=lambda m: -m[1])
        return out

    # -- noun phrases -----------------------------------------------------

    def np(self, pos: int) -> list[tuple[Derivation, int]]:
        results: list[tuple[Derivation, int]] = []
        det = self.entry_at(pos, "Det")
        if det is not None:
            self.note(pos + 1)
            noun = self.noun_at(pos + 1)
            if noun is not None:
                n_entry, used = noun
                det_node = _word(det, self.factory, self.tokens[pos])
                n_node = _word(n_entry, self.factory, *self.tokens[pos + 1 : pos + 1 + used])
                for node in _compose_node("np", det_node, n_node, self.factory):
                    results.append((node, pos + 1 + used))
        for category in ("PN", "Pron"):
            e = self.entry_at(pos, category)
            if e is not None:
                results.append((_word(e, self.factory, self.tokens[pos]), pos + 1))
        for _node, end in results:
            self.note(end)
        return results

    # -- verb phrases, combined with their subject -----------------------

    def clause(self, pos: int) -> list[Derivation]:
        """Parse Subject VP covering tokens[pos:]; semantics is type t."""
        out: list[Derivation] = []
        for subj, vp_start in self.np(pos):
            subject_is_i = subj.span == ("i",)
            out.extend(self.vp(subj, subject_is_i, vp_start))
        return out

    def vp(self, subj: Derivation, subject_is_i: bool, pos: int) -> list[Derivation]:
        out: list[Derivation] = []
        adv = self.entry_at(pos, "Adv")
        vpos = pos + (1 if adv is not None else 0)
        adv_token = self.tokens[pos] if adv is not None else None
        for entry, used, surface in self.verb_at(vpos):
            after = vpos + used
            self.note(after)
            if entry.category == "V_asp":
                out.extend(self.aspectual(subj, entry, surface, after, adv_token))
            elif entry.signature == Fn(E, EET):
                out.extend(self.event_transitive(subj, entry, surface, after, adv_token))
            else:
                out.extend(
                    self.property_vp(subj, subject_is_i, entry, used, surface, after, adv_token)
                )
        return out

    def aspectual(self, subj, entry, surface, pos, adv_token) -> list[Derivation]:
        if adv_token is not None:
            return []
        v_node = _word(entry, self.factory, *surface)
        objects = [(node, end) for node, end in self.np(pos) if end == len(self.tokens)]
        if not objects:
            if pos == len(self.tokens):
                self.failure = CompositionError(
                    f"cannot build a clause from {' '.join(subj.span)!r} and "
                    f"{surface[0]!r}: '{entry.form}' expects an event-type argument "
                    f"{entry.signature.arg} and no object supplies one"
                )
            return []
        out = []
        for obj, _end in objects:
            for inner in _compose_node("vp", v_node, obj, self.factory):
                for with_subj in _compose_node("s", subj, inner, self.factory):
                    out.extend(self.apply_tense(with_subj))
        return out

    def event_transitive(self, subj, entry, surface, pos, adv_token) -> list[Derivation]:
        if adv_token is not None:
            return []
        v_node = _word(entry, self.factory, *surface)
        out = []
        for obj, end in self.np(pos):
            if end != len(self.tokens):
                continue
            for inner in _compose_node("vp", obj, v_node, self.factory):
                for with_subj in _compose_node("s", subj, inner, self.factory):
                    out.extend(self.apply_tense(with_subj))
        return out

    def apply_tense(self, node: Derivation) -> list[Derivation]:
        """Wrap an event-type clause with the present tense entry."""
        if type_of(node.semantics) != ET:
            return []
        pres = _word(self.lexicon.lookup("pres"), self.factory, "pres")
        return _compose_node("tense", pres, node, self.factory)

    def property_vp(
        self, subj, subject_is_i, entry, used, surface, pos, adv_token
    ) -> list[Derivation]:
        """Relational verbs compiled to box-notation predicates."""
        out: list[Derivation] = []
        particle = entry.parts[1] if len(entry.parts) > 1 else None
        prefix = (["I"] if subject_is_i else []) + ([adv_token] if adv_token else [])
        verb_pieces = [surface[0]] + list(entry.parts[1:]) if adv_token else list(entry.parts)

        # "V me Particle": the object is absorbed into the predicate name
        if (
            used == 1
            and particle is not None
            and self.tokens[pos : pos + 2] == ["me", particle]
            and pos + 2 == len(self.tokens)
        ):
            name = "-".join(prefix + [surface[0], "me", particle])
            out.extend(self.saturate(subj, subject_is_i, entry, surface, name, None))
        # intransitive use
        if pos == len(self.tokens):
            out.extend(
                self.saturate(subj, subject_is_i, entry, surface,
                              "-".join(prefix + verb_pieces), None)
            )
        # transitive use with an object NP
        for obj, end in self.np(pos):
            if end != len(self.tokens):
                continue
            out.extend(
                self.saturate(subj, subject_is_i, entry, surface,
                              "-".join(prefix + verb_pieces), obj)
            )
        return out

    def saturate(self, subj, subject_is_i, entry, surface, pred_name, obj) -> list[Derivation]:
        """Build the compressed property and let the NPs consume it."""
        arity = 2 if (obj is not None and not subject_is_i) else 1
        declared = self.lexicon.arity.get(pred_name)
        if declared is not None and declared != arity:
            raise LexiconError(
                f"predicate {pred_name!r} used with arity {arity}, declared {declared}"
            )
        v_node = _word(entry, self.factory, *surface)
        if subject_is_i:
            if obj is None:
                return []  # an I-compressed predicate needs an object to apply to
            prop_node = Derivation("vp", self.unary_property(pred_name), (subj, v_node),
                                   step=f"pred:{pred_name}")
            return _compose_node("s", obj, prop_node, self.factory)
        if obj is None:
            prop_node = Derivation("vp", self.unary_property(pred_name), (v_node,),
                                   step=f"pred:{pred_name}")
            return _compose_node("s", subj, prop_node, self.factory)
        s, o = self.factory.entity(), self.factory.entity()
        inner = LambdaDrs(((o, E),), Leaf(Drs((), (Pred(pred_name, (s, o)),))))
        prop = beta_reduce(LambdaDrs(((s, E),), App(obj.semantics, inner)))
        prop_node = Derivation("vp", prop, (v_node, obj), step=f"pred:{pred_name}")
        return _compose_node("s", subj, prop_node, self.factory)

    def unary_property(self, pred_name: str) -> Term:
        s = self.factory.entity()
        return LambdaDrs(((s, E),), Leaf(Drs((), (Pred(pred_name, (s,)),))))


def parse_sentence(
    tokens: Sequence[str],
    lexicon: Lexicon,
    factory: MarkerFactory | None = None,
) -> tuple[Derivation, ...]:
    """All derivations of a token sequence, coercion choices included.

    Raises LexiconError for unknown tokens, NoParseError when the fragment
    grammar licenses nothing, CompositionError when the only parse fails to
    compose semantically.
    """
    tokens = [t for t in tokens]
    if not tokens:
        raise NoParseError("empty sentence", ())
    _check_tokens(tokens, lexicon)
    if factory is None:
        factory = MarkerFactory()
    derivations: list[Derivation] = []
    failure: CompositionError | None = None

    if tokens[0] in ("when", "if") and "," in tokens:
        comma = tokens.index(",")
        left, right = tokens[1:comma], tokens[comma + 1 :]
        conj = next(e for e in lexicon.lookup_all(tokens[0]) if e.category == "Conj")
        lp = _SentenceParser(left, lexicon, factory)
        rp = _SentenceParser(right, lexicon, factory)
        for l_node in lp.clause(0):
            for r_node in rp.clause(0):
                conj_node = _word(conj, factory, tokens[0])
                for halfway in _compose_node("cond", conj_node, l_node, factory):
                    for full in _compose_node("cond", halfway, r_node, factory):
                        derivations.append(full)
        failure = lp.failure or rp.failure
        longest = 1 + max(lp.longest, comma + 1 + rp.longest)
    else:
        parser = _SentenceParser(tokens, lexicon, factory)
        derivations = parser.clause(0)
        failure = parser.failure
        longest = parser.longest
        if tokens[0] in ("when", "if"):
            longest = max(longest, 1)

    unique: list[Derivation] = []
    seen: list[Term] = []
    for d in derivations:
        if d.semantics not in seen:
            seen.append(d.semantics)
            unique.append(d)
    if not unique:
        if failure is not None:
            raise failure
        raise NoParseError(
            f"no parse for {' '.join(tokens)!r} "
            f"(longest parsed prefix: {' '.join(tokens[:longest])!r})",
            tokens[:longest],
        )
    return tuple(unique)


def _check_tokens(tokens: Sequence[str], lexicon: Lexicon) -> None:
    parts = {p for form in lexicon.forms for p in form.split("-")}
    for t in tokens:
        if t == ",":
            continue
        if lexicon.has(t) or lexicon.has(base_form(t)):
            continue
        if t in parts or base_form(t) in parts:
            continue
        raise LexiconError(f"unknown word: {t!r}", token=t)


def build_sentence_drs(derivation: Derivation) -> Drs:
    """The lambda-free, type-t DRS of a complete derivation."""
    sem = beta_reduce(derivation.semantics)
    if not isinstance(sem, Leaf) or type_of(sem) != T:
        raise CompositionError(
            f"derivation does not denote a proposition (type {type_of(sem)})"
        )
    return sem.drs


def sentence_drs_variants(
    text: str, lexicon: Lexicon, factory: MarkerFactory | None = None
) -> tuple[tuple[Derivation, Drs], ...]:
    """Parse and build, pairing every derivation with its sentence-DRS."""
    derivs = parse_sentence(tokenize(text), lexicon, factory)
    out: list[tuple[Derivation, Drs]] = []
    seen: list[Drs] = []
    for d in derivs:
        drs = build_sentence_drs(d)
        if drs not in seen:
            seen.append(drs)
            out.append((d, drs))
    return tuple(out)


def load_discourse(text: str) -> list[str]:
    """One sentence per line; blank lines and '#' comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def process_discourse(
    sentences: Sequence[str],
    lexicon: Lexicon | None = None,
    policy: str = "best",
    *,
    bound: int = 4,
    order: str = "pronouns-last",
) -> DiscourseState:
    """Fold sentences through parse -> merge -> resolve.

    ``policy`` "best" follows the preferred reading at every choice point;
    "all" records every reading of each sentence in ``alternatives`` while
    still advancing along the preferred one.
    """
    if policy not in ("best", "all"):
        raise ValueError(f"unknown policy {policy!r}")
    if lexicon is None:
        from .lexicon import builtin_paper_fragment

        lexicon = builtin_paper_fragment()
    factory = MarkerFactory()
    bridgeable = lexicon.bridgeable_predicates()
    state = DiscourseState()
    for index, text in enumerate(sentences):
        try:
            variants = sentence_drs_variants(text, lexicon, factory)
            merged = merge(state.main_drs, variants[0][1])
            readings = resolve_all(merged, bound=bound, order=order, bridgeable=bridgeable)
        except Exception as exc:  # annotate and re-raise
            if isinstance(exc, (LexiconError, NoParseError, CompositionError, ResolutionError)):
                exc.sentence_index = index
            raise
        chosen = readings[0]
        state = DiscourseState(
            main_drs=chosen.resolved,
            history=state.history + ((text, chosen),),
            alternatives=state.alternatives + ((readings if policy == "all" else (chosen,)),),
        )
        assert is_proper(state.main_drs)
    return state
