"""Exception taxonomy shared by all symlab modules."""


class SymlabError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SymlabError):
    """A precondition on the arguments was violated."""


class DomainError(SymlabError):
    """A set was passed to a colouring or structure outside its declared domain."""


class NotFound(SymlabError):
    """A required witness does not exist within the given bounds."""


class NotConstant(SymlabError):
    """A value colouring was requested where extensions are not single-valued."""


class Unclassifiable(SymlabError):
    """No threshold classification of the instance exists."""


class IncompleteMap(SymlabError):
    """An atom map was applied to an object containing atoms outside its domain."""


class NoExtension(SymlabError):
    """The finite structure cannot absorb the requested extension (saturation)."""


class ConstraintViolation(SymlabError):
    """A partial automorphism breaks the theory of its model."""


class BudgetExceeded(SymlabError):
    """A search exhausted its node budget before completing.

    ``partial`` carries whatever incomplete result was accumulated; it must
    be treated as inconclusive, never as an answer.
    """

    def __init__(self, message, partial=None, nodes=None):
        super().__init__(message)
        self.partial = partial
        self.nodes = nodes
