"""Domain error types shared across the package."""


class DistafError(Exception):
    """Base class for all domain errors raised by this package."""


class MalformedCode(DistafError):
    """A metric code string does not match the <PILLAR>.<MECH>.<D|O><index> grammar."""


class TemplateFormatError(DistafError):
    """A template or assessment document cannot be parsed into the data model."""


class NoScorableChildren(DistafError):
    """Aggregation was requested over a container with no included children."""


class OutOfRange(DistafError):
    """A raw metric value is outside the domain accepted by the metric's kind."""


class NoQuestionForPhase(DistafError):
    """The mechanism defines no cluster question for the requested phase."""


class BadAnswerIndex(DistafError):
    """Answer index falls outside the cluster question's answer list."""


class UnknownStandard(DistafError):
    """The standard id is not declared in the framework template."""


class TemplateMismatch(DistafError):
    """An assessment or scorecard references a different template or unknown codes."""


class UnknownTemplate(DistafError):
    """No template with the requested id is available."""


class UnknownAssessment(DistafError):
    """No assessment with the requested id exists."""


class UnknownPredecessor(DistafError):
    """The assessment named as predecessor does not exist."""


class DuplicateAssessment(DistafError):
    """An assessment with the requested id already exists."""


class UnknownCode(DistafError):
    """A metric code does not exist in the bound template."""


class UnknownMechanism(DistafError):
    """A mechanism reference does not exist in the bound template."""


class UnknownPillar(DistafError):
    """A pillar code does not exist in the bound template."""


class NotDraft(DistafError):
    """The assessment is not in draft status, so its content cannot be edited."""


class RevisionConflict(DistafError):
    """Optimistic-lock failure: the supplied revision is stale."""


class IncompleteAssessment(DistafError):
    """Status transition requires every included metric to be scored first."""


class UnsupportedFormat(DistafError):
    """The requested export format is not one of dump/tabular/summary."""


class Forbidden(DistafError):
    """The caller's role does not permit the requested action."""


class DuplicateUsername(DistafError):
    """A user with that name already exists."""


class UnknownUser(DistafError):
    """No user with the requested name exists."""
