"""Exception hierarchy shared by all moulcalc modules."""


class MouldError(ValueError):
    """Base class for every domain error raised by the package."""


class NoSemigroup(MouldError):
    """Letters cannot be added (abstract symbols or mismatched shapes)."""


class EmptyWord(MouldError):
    """An operation needing at least one letter got the empty word."""


class AlphabetMismatch(MouldError):
    pass


class BoundExceeded(MouldError):
    """A mould was evaluated beyond the length bound it is known to."""


class PoleAtWord(MouldError):
    """A closed-form rule has a zero denominator on the requested word."""

    def __init__(self, word, reason=""):
        self.word = tuple(word)
        msg = "pole at word %r" % (self.word,)
        if reason:
            msg += ": " + reason
        super().__init__(msg)


class NotInvertible(MouldError):
    pass


class NotCompInvertible(MouldError):
    pass


class CompositionUndefined(MouldError):
    pass


class NonNilpotent(MouldError):
    pass


class NotAdditive(MouldError):
    pass


class NotMorphism(MouldError):
    pass


class SampleCollision(MouldError):
    """Two letters that must differ coincided at a sample point."""


class UnknownMould(MouldError):
    pass


class UnknownLetter(MouldError):
    pass


class NotPrepared(MouldError):
    pass


class InadmissibleDegree(MouldError):
    pass


class NotLocal(MouldError):
    pass


class Resonant(MouldError):
    def __init__(self, word, detail=""):
        self.word = tuple(word)
        msg = "resonant word %r" % (self.word,)
        if detail:
            msg += " (%s)" % detail
        super().__init__(msg)


class CapExceeded(MouldError):
    pass
