"""Exception types shared across the package."""


class PSpectralError(Exception):
    """Base class for all package-specific errors."""


class ParameterDomainError(PSpectralError, ValueError):
    """A construction or operation received out-of-domain parameters."""


class FormatError(PSpectralError, ValueError):
    """A text payload does not conform to the .uhg / .g file formats."""


class ResourceGuardError(PSpectralError, RuntimeError):
    """An enumeration was refused because its raw search space is too large."""


class StructureError(PSpectralError, ValueError):
    """An input graph lacks the structure an operation requires."""


class MultipleEdgeError(PSpectralError, ValueError):
    """An edge rewrite would create a duplicate hyperedge."""


class MergePreconditionError(PSpectralError, ValueError):
    """Vertex-merge preconditions are violated."""

    code = "merge-precondition"


class MergeSharedEdgeError(MergePreconditionError):
    """The two vertices to merge appear together in some hyperedge."""

    code = "shared-edge"


class MergeSharedLinkError(MergePreconditionError):
    """The links of the two vertices to merge are not disjoint."""

    code = "shared-link"


class NonConvergenceError(PSpectralError, RuntimeError):
    """An iterative solve failed to reach the requested tolerance."""
