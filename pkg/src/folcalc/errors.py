"""Exception hierarchy.

Input problems (bad expressions, malformed jobs, wrong degrees) derive from
:class:`InputError`; obstructions met while computing on valid input
(resonances, degenerate or inadmissible singular points) derive from
:class:`Inadmissible`.  The CLI maps the two families to exit codes 2 and 3.
"""


class FolcalcError(Exception):
    pass


class InputError(FolcalcError, ValueError):
    pass


class VariableMismatch(InputError):
    pass


class ExpressionSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownVariable(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotSingular(InputError):
    pass


class Inadmissible(FolcalcError):
    """The data is valid but violates a hypothesis of the computation."""


class ResonanceError(Inadmissible):
    def __init__(self, message, multi_index=None):
        super().__init__(message)
        self.multi_index = multi_index


class DegenerateError(Inadmissible):
    pass
