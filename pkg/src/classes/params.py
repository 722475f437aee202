#!/usr/bin/env python
"""params.py"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from classes.errors import ConfigError


@dataclass(frozen=True)
class SeriesControl:
    """
    Truncation and regime settings for the complex-order Bessel series.

    Args:
        - max_terms (int): Upper bound on summed terms in either regime.
        - rel_tol (float): Relative size of the last kept term.
        - arg_switch (float): Argument above which the large-argument
            expansion is tried first.
    """
    max_terms: int = 500
    rel_tol: float = 1e-15
    arg_switch: float = 30.0

    def __post_init__(self):
        if self.max_terms < 16:
            raise ConfigError("max_terms must be at least 16", "max_terms")
        if not 0.0 < self.rel_tol < 1.0:
            raise ConfigError("rel_tol must lie in (0, 1)", "rel_tol")
        if self.arg_switch <= 0.0:
            raise ConfigError("arg_switch must be positive", "arg_switch")


@dataclass(frozen=True)
class AttractorParams:
    """
    Parameter set of the driven cavity with a sinusoidally moving mirror.

    Everything is in normalized units (ħ = 1). The derived quantities are
    properties so they can never go stale.

    Args:
        - kappa: Cavity decay rate.
        - Delta: Laser detuning.
        - G: Frequency pull per unit displacement.
        - Omega_m: Mechanical frequency.
        - alpha_max_sq: Intracavity photon number at resonance.
        - Gamma_M: Mechanical damping rate.
        - xbar: Mean displacement.
        - A: Oscillation amplitude.
        - mass: Stiffness scale m of the force balance m Ω_m² x̄ = ⟨F⟩.
    """
    kappa: float = 1.0
    Delta: float = 0.0
    G: float = 1.0
    Omega_m: float = 1.0
    alpha_max_sq: float = 1.0
    Gamma_M: float = 0.0
    xbar: float = 0.0
    A: float = 0.0
    mass: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0.0:
            raise ConfigError("kappa must be positive", "kappa")
        if not self.Omega_m > 0.0:
            raise ConfigError("Omega_m must be positive", "Omega_m")
        if self.alpha_max_sq < 0.0:
            raise ConfigError("alpha_max_sq must be nonnegative",
                              "alpha_max_sq")
        if self.Gamma_M < 0.0:
            raise ConfigError("Gamma_M must be nonnegative", "Gamma_M")
        if self.A < 0.0:
            raise ConfigError("A must be nonnegative", "A")
        if not self.mass > 0.0:
            raise ConfigError("mass must be positive", "mass")

    @property
    def c(self) -> float:
        return self.kappa / (2.0 * self.Omega_m)

    @property
    def r(self) -> float:
        return (self.G * self.xbar + self.Delta) / self.Omega_m

    @property
    def X(self) -> float:
        return -self.G * self.A / self.Omega_m

    @property
    def rho(self) -> complex:
        return complex(self.r, self.c)

    @property
    def nu(self) -> complex:
        return complex(-self.r, self.c)

    @property
    def alpha_max(self) -> float:
        return math.sqrt(self.alpha_max_sq)

    @property
    def coupling(self) -> float:
        """G |α_max|² / Ω_m, the strength entering the stability bound."""
        return self.G * self.alpha_max_sq / self.Omega_m


@dataclass(frozen=True)
class CycleParams:
    """
    Parameter set of the Fokker-Planck description of the mechanical
    amplitude.

    K defaults to g0²/ω_m, Delta_eff to Delta and Delta_tilde_eff to
    Delta_eff. E is a constant drive-strength parameter: it only enters
    through g0 E² and g0² E².
    """
    omega_m: float = 1.0
    kappa: float = 1.0
    Delta: float = 0.0
    g0: float = 0.5
    E: float = 1.0
    gamma: float = 0.0
    nbar: float = 0.0
    K: Optional[float] = None
    Delta_eff: Optional[float] = None
    Delta_tilde_eff: Optional[float] = None

    def __post_init__(self):
        if not self.omega_m > 0.0:
            raise ConfigError("omega_m must be positive", "omega_m")
        if not self.kappa > 0.0:
            raise ConfigError("kappa must be positive", "kappa")
        if self.gamma < 0.0:
            raise ConfigError("gamma must be nonnegative", "gamma")
        if self.nbar < 0.0:
            raise ConfigError("nbar must be nonnegative", "nbar")

        # Fill the defaulted fields in place (frozen dataclass)
        if self.K is None:
            object.__setattr__(self, "K", self.g0 ** 2 / self.omega_m)
        if self.Delta_eff is None:
            object.__setattr__(self, "Delta_eff", self.Delta)
        if self.Delta_tilde_eff is None:
            object.__setattr__(self, "Delta_tilde_eff", self.Delta_eff)

    @property
    def eta(self) -> float:
        return 2.0 * self.g0 / self.omega_m

    @property
    def nu(self) -> complex:
        return complex(self.Delta_eff, self.kappa) / self.omega_m

    @property
    def nu_tilde(self) -> complex:
        return complex(self.Delta_tilde_eff, self.kappa) / self.omega_m

    @property
    def beta(self) -> complex:
        return complex(self.omega_m, -2.0 * self.kappa)

    @property
    def gamma0(self) -> float:
        """Damping unit g0 E² / ω_m² used for limit-cycle plots."""
        return self.g0 * self.E ** 2 / self.omega_m ** 2

    def h(self, n: int) -> complex:
        return complex(self.kappa, n * self.omega_m - self.Delta_eff)

    def h_tilde(self, n: int) -> complex:
        return complex(self.kappa, n * self.omega_m - self.Delta_tilde_eff)


@dataclass(frozen=True)
class TrajectoryConfig:
    """
    Fixed-step integration settings, all counted in mechanical periods.
    """
    periods_transient: int = 40
    periods_average: int = 20
    steps_per_period: int = 512

    def __post_init__(self):
        if self.steps_per_period < 256:
            raise ConfigError("steps_per_period must be at least 256",
                              "steps_per_period")
        if self.periods_transient < 1 or self.periods_average < 1:
            raise ConfigError("period counts must be positive",
                              "periods_transient")

    @classmethod
    def for_params(cls, p: AttractorParams, **overrides):
        """
        Default configuration for a parameter set: 40/κ transient periods
        (in units of Ω_m), at least 20.
        """
        kappa = p.kappa / p.Omega_m
        transient = max(20, math.ceil(40.0 / kappa))
        settings = {"periods_transient": transient}
        settings.update(overrides)
        return cls(**settings)


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis: name, endpoints, count and spacing."""
    name: str
    start: float
    stop: float
    count: int = 1
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError(f"axis {self.name}: count must be >= 1",
                              self.name)
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"axis {self.name}: unknown spacing "
                              f"{self.spacing!r}", self.name)
        if self.spacing == "log" and (self.start <= 0 or self.stop <= 0):
            raise ConfigError(f"axis {self.name}: log spacing needs "
                              "positive endpoints", self.name)

    def values(self) -> list:
        if self.count == 1:
            return [float(self.start)]
        if self.spacing == "log":
            return [float(v) for v in
                    np.geomspace(self.start, self.stop, self.count)]
        return [float(v) for v in
                np.linspace(self.start, self.stop, self.count)]


@dataclass
class RunConfig:
    """
    Fully resolved CLI invocation, after merging --config and flags.
    """
    mode: str
    params: dict = field(default_factory=dict)
    grid: list = field(default_factory=list)
    output: Optional[str] = None
    fmt: str = "csv"
    tolerances: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def axis(self, name: str):
        for spec in self.grid:
            if spec.name == name:
                return spec
        return None
