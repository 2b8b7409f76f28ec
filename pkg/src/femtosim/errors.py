"""Exception types shared across the package."""


class FemtosimError(Exception):
    """Base class for all femtosim errors."""


class PlacementInfeasible(FemtosimError):
    """Rejection sampling could not place a FAP within the attempt budget."""


class UnknownServingFap(FemtosimError):
    """A FAP id was referenced that does not exist in the deployment."""


class ScenarioError(FemtosimError):
    """Base class for scenario-file problems; carries a 1-based line number."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class ParseError(ScenarioError):
    """A scenario line could not be read (syntax, unknown key, bad value)."""


class ValidationError(ScenarioError):
    """The scenario parsed but violates a documented constraint."""
