"""Exception hierarchy shared by all qdrt modules."""


class QdrtError(Exception):
    """Base class for all errors raised by this package."""


class PathError(QdrtError):
    """A DRS path does not dereference to a sub-DRS of the given root."""


class ParseError(QdrtError):
    """Input text (discourse, sentence, linear form, ...) failed to parse."""


class NoParseError(ParseError):
    """A token sequence is not licensed by the fragment grammar."""

    def __init__(self, message, longest_prefix=()):
        super().__init__(message)
        self.longest_prefix = tuple(longest_prefix)


class LexiconError(QdrtError):
    """Bad lexicon source, unknown word, or arity table violation."""

    def __init__(self, message, line=None, column=None, token=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.token = token


class CompositionError(QdrtError):
    """Functional composition failed and no coercion route exists."""


class IllTypedError(CompositionError):
    """A lambda term is not simply typable."""


class ResolutionError(QdrtError):
    """An anaphoric condition could not be consumed."""


class ImproperDrsError(QdrtError):
    """A model-theoretic operation received a non-proper DRS."""


class ModelFormatError(QdrtError):
    """A model file does not conform to the model format."""
