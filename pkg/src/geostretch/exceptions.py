"""Exception hierarchy shared by every module of the package."""


class GeoStretchError(Exception):
    """Base class for all package errors."""


class ParseError(GeoStretchError, ValueError):
    """Malformed input file."""


# graph model
class GraphError(GeoStretchError, ValueError):
    pass


class DisconnectedGraph(GraphError):
    def __init__(self, components):
        self.components = [sorted(c) for c in components]
        preview = ", ".join(
            "{" + ", ".join(map(str, c[:8])) + (", ..." if len(c) > 8 else "") + "}"
            for c in self.components[:4]
        )
        more = "" if len(self.components) <= 4 else f" and {len(self.components) - 4} more"
        super().__init__(
            f"graph has {len(self.components)} connected components: {preview}{more}"
        )


class NonPositiveLength(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class InvalidVertexId(GraphError, IndexError):
    pass


class EmptyEdgeSet(GraphError):
    pass


class DegenerateEdge(GraphError):
    pass


class NotAdjacent(GraphError):
    pass


# sources / oracle
class SourceError(GeoStretchError, ValueError):
    pass


class EmptySourceSet(SourceError):
    pass


class DuplicateSource(SourceError):
    pass


class KTooLarge(SourceError):
    pass


class SourceSetSizeMismatch(SourceError):
    pass


class GraphOracleMismatch(GeoStretchError, ValueError):
    pass


class OracleFileError(GeoStretchError):
    pass


class ChecksumMismatch(OracleFileError):
    pass


class CorruptFile(OracleFileError):
    pass


class VersionMismatch(OracleFileError):
    pass


# analysis / brute force
class GraphTooLargeForNaive(GeoStretchError, ValueError):
    pass


class BudgetExceeded(GeoStretchError, ValueError):
    def __init__(self, n, k, count, budget):
        self.n, self.k, self.count, self.budget = n, k, count, budget
        super().__init__(
            f"C({n}, {k}) = {count} subsets exceeds the enumeration budget of {budget}"
        )


# reduction
class ReductionError(GeoStretchError, ValueError):
    pass


class DegreeTooHigh(ReductionError):
    pass


class MalformedPolyline(ReductionError):
    pass


class OverlappingPolylines(ReductionError):
    pass


class XiTooSmall(ReductionError):
    pass
