"""Sampling scenarios for the empirical correlation coefficient.

A scenario pins down which coefficient is studied (centered at sample
means vs. centered at known true means) under which sampling model
(spherical vs. bivariate Gaussian with correlation rho).  The spherical
known-mean case and the Gaussian known-mean case at rho = 0 produce the
same law for the coefficient, but they are kept as distinct labels
because the command line exposes both.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Model", "Scenario"]


class Model(enum.Enum):
    SPHERICAL_CENTERED = "spherical-centered"
    SPHERICAL_KNOWN_MEAN = "spherical-known"
    GAUSSIAN_CENTERED = "gaussian"
    GAUSSIAN_KNOWN_RHO0 = "gaussian-known-rho0"


@dataclass(frozen=True)
class Scenario:
    """A sampling model plus its correlation parameter.

    ``rho`` is meaningful only for ``Model.GAUSSIAN_CENTERED``; the other
    models are parameter-free and require ``rho = 0``.  Validity here is
    |rho| < 1 (densities, quadrature and sampling all work on that range);
    the stricter concavity bound needed by the sharp tail approximation is
    enforced where that approximation is computed.
    """

    model: Model
    rho: float = 0.0

    def __post_init__(self):
        if self.model is Model.GAUSSIAN_CENTERED:
            if not abs(self.rho) < 1.0:
                raise DomainError(f"gaussian scenario requires |rho| < 1, got {self.rho}")
        elif self.rho != 0.0:
            raise DomainError(f"{self.model.value} scenario does not take rho (got {self.rho})")

    @property
    def known_mean(self) -> bool:
        return self.model in (Model.SPHERICAL_KNOWN_MEAN, Model.GAUSSIAN_KNOWN_RHO0)

    @property
    def name(self) -> str:
        return self.model.value

    @classmethod
    def from_name(cls, name: str, rho: float = 0.0) -> "Scenario":
        try:
            model = Model(name)
        except ValueError:
            valid = ", ".join(m.value for m in Model)
            raise DomainError(f"unknown scenario {name!r}; expected one of: {valid}") from None
        if model is not Model.GAUSSIAN_CENTERED and rho != 0.0:
            raise DomainError(f"scenario {name!r} does not take --rho")
        return cls(model, rho)
