"""qdrt: compositional discourse representation with qualia-driven coercion
and three-tier anaphora resolution (linking > bridging > accommodation)."""

from .drs import (
    Alpha,
    Condition,
    Disj,
    Drs,
    EMPTY_DRS,
    Eq,
    Impl,
    Marker,
    MarkerFactory,
    Neg,
    Pred,
    Qualia,
    QualiaRole,
    accessible_markers,
    alpha_equal,
    coercive_accommodation,
    free_markers,
    is_proper,
    merge,
    rename_fresh,
    sub_drs_at,
    subordinates,
    substitute,
)
from .composition import beta_reduce, functional_composition, qualia_access, type_coercion, type_of
from .terms import App, CondTerm, E, EET, ET, Fn, LambdaDrs, Leaf, Merge, T, Var
from .lexicon import Lexicon, LexicalEntry, builtin_paper_fragment, load_lexicon
from .grammar import (
    DiscourseState,
    build_sentence_drs,
    load_discourse,
    parse_sentence,
    process_discourse,
    tokenize,
)
from .resolution import (
    Reading,
    accommodate,
    acceptable,
    bridge,
    link,
    resolve_all,
    resolve_one,
    suitable_mappings,
)
from .model import Model, consistent, entails, parse_model, verify

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
