"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class CompositionError(WorkbenchError):
    """Attempt to compose maps whose domain/codomain do not match."""


class DomainError(WorkbenchError):
    """An element lies outside the carrier it was claimed to belong to."""


class CoherenceError(WorkbenchError):
    """Supplied data fails a stated coherence precondition (e.g. h != g.f)."""


class AxiomViolation(WorkbenchError):
    """A fixture returned data violating an operadic-category axiom."""


class ConfigError(WorkbenchError):
    """Missing or inconsistent fixture configuration."""


class NoLiftError(WorkbenchError):
    """The fixture has no cleavage lift for the requested isomorphism.

    This is data, not a crash: negative fixtures produce it on purpose and
    the cleavage checker records it as a reportable outcome.
    """


class ConstructionError(WorkbenchError):
    """A graph/morphism constructor was given an ill-formed request."""
