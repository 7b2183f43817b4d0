"""Exception hierarchy shared by all permcount modules."""


class PermcountError(Exception):
    """Base class for every error raised by the library."""


class DimensionTooLarge(PermcountError):
    pass


class IndexOutOfRange(PermcountError):
    pass


class UnequalRemovalCounts(PermcountError):
    pass


class NotPerfectSquare(PermcountError):
    pass


class BadModulus(PermcountError):
    pass


class NonZeroOneWeights(PermcountError):
    pass


class DuplicateEdge(PermcountError):
    pass


class UnknownGadget(PermcountError):
    pass


class WrongPairCount(PermcountError):
    pass


class ModulusMismatch(PermcountError):
    pass


class NoModulus(PermcountError):
    pass


class TooFewBoundaryNodes(PermcountError):
    pass


class MalformedEmbedding(PermcountError):
    pass


class NonPlanarInput(PermcountError):
    pass


class InternalNotPerfectSquare(NotPerfectSquare):
    """A Pfaffian orientation produced a non-square determinant (a bug, never expected)."""


class DimacsSyntaxError(PermcountError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class HeaderMismatch(PermcountError):
    pass


class TautologicalClause(PermcountError):
    pass


class VarOutOfRange(PermcountError):
    pass


class TooManyVariables(PermcountError):
    pass


class BadPermutation(PermcountError):
    pass


class NotThreeCnf(PermcountError):
    pass


class WeightedGadget(PermcountError):
    pass


class NotForest(PermcountError):
    pass


class NotPnPlanarInput(PermcountError):
    pass


class NonPlanarBDC(PermcountError):
    """The bipartite double cover of a built graph is not planar, so FKT does not apply."""

    def __init__(self, message: str = "bipartite double cover is not planar", substitution=None):
        super().__init__(message)
        self.substitution = substitution


class DeciderFailure(PermcountError):
    pass


class BadSearchConfig(PermcountError):
    pass
