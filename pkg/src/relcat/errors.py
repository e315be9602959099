"""Exception hierarchy shared by every module."""


class RelcatError(Exception):
    """Base class for all errors raised by relcat."""


class MalformedAlgebra(RelcatError):
    pass


class BadPrime(RelcatError):
    pass


class KindMismatch(RelcatError):
    pass


class IndexOutOfRange(RelcatError):
    pass


class EnumerationBudgetExceeded(RelcatError):
    """An exhaustive enumeration would exceed its configured budget."""


class ObjectMismatch(RelcatError):
    pass


class NotASubobject(RelcatError):
    """A graph is not closed under the operations of its variety."""


class TypeMismatch(RelcatError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(self.path) or "<root>"
        super().__init__(f"{message} (at {where})")


class UnboundGenerator(RelcatError):
    pass


class BoundaryMismatch(RelcatError):
    pass


class ParseError(RelcatError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class NotMalcevBackend(RelcatError):
    pass


class InternalError(RelcatError):
    """A construction invariant guaranteed by the theory was violated."""


class NotFrobenius(RelcatError):
    pass


class InvalidGroupoid(RelcatError):
    pass


class NotUnital(RelcatError):
    pass


class NotQuantumStructure(RelcatError):
    pass


class NotCP(RelcatError):
    pass


class DescriptorError(RelcatError):
    """A JSON descriptor is missing fields or has the wrong shape."""
