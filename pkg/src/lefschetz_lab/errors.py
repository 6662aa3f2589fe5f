"""Exception hierarchy shared by every module."""


class LabError(Exception):
    """Base class for all library errors."""


class InputError(LabError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class NumericalFailure(LabError, ArithmeticError):
    """A floating-point path disagreed with its exact cross-check (CLI exit code 3)."""


class EmptyFacet(InputError):
    pass


class DuplicateVertexInFacet(InputError):
    pass


class EmptyComplex(InputError):
    pass


class VertexlessGraph(InputError):
    pass


class NonPositiveThreshold(InputError):
    pass


class InvalidAutomorphism(InputError):
    pass


class NotSimplicial(InvalidAutomorphism):
    def __init__(self, simplex, image):
        self.simplex = tuple(simplex)
        self.image = tuple(image)
        super().__init__(f"simplex {list(self.simplex)} maps to {list(self.image)}, which is not a simplex")


class TooManyVertices(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class AmbientDimTooLarge(InputError):
    pass


class ParseError(InputError):
    pass


class EigensolverFailure(NumericalFailure):
    pass


class NonIntegerTrace(NumericalFailure):
    pass
