"""
Exception hierarchy shared by the library and the command layer.
"""


class NeutralSetsError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 3


class InputError(NeutralSetsError):
    """Malformed input file or argument"""

    exit_code = 2


class ConstructionError(NeutralSetsError):
    """A generator could not build a valid factor set"""


class HorizonError(NeutralSetsError):
    """A statistic was requested outside the verifiable horizon"""

    def __init__(self, message, word=None, horizon=None):
        super().__init__(message)
        self.word = word
        self.horizon = horizon


class MembershipError(NeutralSetsError):
    """A word was expected to belong to a factor set"""

    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class SingularityError(NeutralSetsError):
    """An interval exchange was evaluated at a boundary point"""

    def __init__(self, message, point=None, step=None):
        super().__init__(message)
        self.point = point
        self.step = step


class CodeError(NeutralSetsError):
    """A set of words does not have the required code property"""


class PreconditionError(NeutralSetsError):
    """The hypothesis of a verifier does not hold for its input"""


class IncompleteEnumerationError(NeutralSetsError):
    """An enumeration may continue past the horizon"""


class TheoremViolation(NeutralSetsError):
    """A verifier found a counterexample"""

    exit_code = 4

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
