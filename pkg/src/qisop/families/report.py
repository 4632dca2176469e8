"""Shared result type and errors for the parametrized families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .. import DomainError, QisopError

__all__ = ["FamilyReport", "SingularParameterError", "ConfigurationError"]


class SingularParameterError(DomainError):
    """A closed form divides by a quantity that vanishes at these parameters."""


class ConfigurationError(QisopError, ValueError):
    """An option or identifier is not recognised."""


@dataclass(frozen=True)
class FamilyReport:
    """Closed-form metrics of one member of a family.

    ``r0``/``a0`` refer to the outer arcs (outside the optimal ball) and
    ``r1``/``a1`` to the inner ones. ``q`` and ``phi`` are only defined for
    the rotationally symmetric families. ``extra`` carries family-specific
    geometry such as centers and the perimeter.
    """

    family: str
    params: dict
    r0: float
    r1: float
    a0: float
    a1: float
    delta: float
    lambda_: float
    value: float
    q: float = None
    phi: float = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lambda_ > 0.0:
            expected = self.delta / self.lambda_**2
            if not math.isclose(self.value, expected, rel_tol=1e-12, abs_tol=0.0):
                raise ValueError("value must equal delta / lambda**2")

    @property
    def c_star(self):
        """Reciprocal of the quotient."""
        return 1.0 / self.value

    def to_dict(self):
        out = {
            "family": self.family,
            "params": dict(self.params),
            "r0": self.r0,
            "r1": self.r1,
            "a0": self.a0,
            "a1": self.a1,
            "delta": self.delta,
            "lambda": self.lambda_,
            "value": self.value,
        }
        if self.q is not None:
            out["q"] = self.q
        if self.phi is not None:
            out["phi"] = self.phi
        if self.extra:
            out["extra"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.extra.items()}
        return out
