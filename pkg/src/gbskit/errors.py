"""Exception hierarchy shared by all gbskit modules."""


class GBSError(Exception):
    """Base class for every error raised by gbskit."""


class SpecError(GBSError, ValueError):
    """A graph-of-groups document could not be turned into a valid spec."""

    kind = "SpecError"

    def __init__(self, message, ident=None):
        super().__init__(message)
        self.ident = ident


class SpecSyntaxError(SpecError):
    kind = "SyntaxError"


class ZeroLabel(SpecError):
    kind = "ZeroLabel"


class UnknownSymbol(SpecError):
    kind = "UnknownSymbol"


class BadInvolution(SpecError):
    kind = "BadInvolution"


class NonRootAttachment(SpecError):
    kind = "NonRootAttachment"


class BadRoots(SpecError):
    kind = "BadRoots"


class WordError(GBSError, ValueError):
    """Base class for errors about words."""


class UnsoundWord(WordError):
    pass


class EndpointMismatch(WordError):
    pass


class GraphMismatch(WordError):
    pass


class NotInCentralizer(GBSError, ValueError):
    def __init__(self, message, ident=None):
        super().__init__(message)
        self.ident = ident


class NotRelationPreserving(GBSError, ValueError):
    pass
