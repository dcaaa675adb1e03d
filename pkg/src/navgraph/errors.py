"""Exception types shared across the package."""


class NavGraphError(Exception):
    """Base class for all navgraph errors."""


class DuplicateIdError(NavGraphError):
    """An id (node, edge, or rule name) is declared more than once."""


class ReservedIdError(NavGraphError):
    """The exit sentinel id was declared as a regular node."""


class DanglingEdgeRefError(NavGraphError):
    """An edge references an unknown node, rule, or edge id."""


class UnknownEntryError(NavGraphError):
    """The graph entry (or an entry override) names no declared node."""


class UnknownResolverError(NavGraphError):
    """An endpoint references a resolver that is not registered."""


class UnknownRuleError(NavGraphError):
    """A navigation rule name is not declared in the graph."""


class InactiveSessionError(NavGraphError):
    """An engine operation was invoked on an exited or unentered session."""


class ConflictingBindingError(NavGraphError):
    """Two rules claim the same input token."""


class GraphParseError(NavGraphError):
    """A graph document could not be parsed.

    Carries ``line`` and ``column`` (1-based) when the underlying JSON
    decoder reported a position, else both are 0.
    """

    def __init__(self, message, line=0, column=0):
        super().__init__(message)
        self.line = line
        self.column = column


class EmptyListError(NavGraphError):
    """A list structure spec declared no items."""


class MultipleRootsError(NavGraphError):
    """A tree structure spec has zero or more than one root."""


class CycleError(NavGraphError):
    """A tree structure spec contains a parent cycle."""


class CellCountMismatchError(NavGraphError):
    """A dual-hierarchy spec's cell list does not cover dimA x dimB."""


class UnknownRegionError(NavGraphError):
    """An adjacency border pair references an undeclared region."""


class EmptySceneError(NavGraphError):
    """A chart scene has no marks, axes, legend, or title to extract."""


class MissingTemplateFieldError(NavGraphError):
    """A description template demands a datum field the mark lacks."""


class MissingRenderSpecError(NavGraphError):
    """A focus destination has no render geometry and fallback is disabled."""
