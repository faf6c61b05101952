"""Exception types shared across the package."""


class FFBCError(ValueError):
    """Base class for all domain errors raised by ffbc."""


class DegenerateInput(FFBCError):
    pass


class DivergentSeries(FFBCError):
    pass


class NotCoprime(FFBCError):
    pass


class LevelMismatch(FFBCError):
    pass


class NotInFChi(FFBCError):
    """The requested inverse shift of a character does not exist: the
    character is nontrivial on the kernel of the ideal."""


class AdmissibilityRequired(FFBCError):
    pass


class UnsafeTruncation(FFBCError):
    pass


class ParseError(FFBCError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} (at position {pos})"
        super().__init__(msg)
