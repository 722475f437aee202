#!/usr/bin/env python
"""records.py"""
from dataclasses import dataclass
from enum import Enum


class SumKind(Enum):
    """Which Bessel product the summation kernel carries."""
    S0 = 0  # Σ J_n J_n / (n + μ)
    S1 = 1  # Σ J_{n-1} J_n / (n + μ)
    S2 = 2  # Σ J_{n-2} J_n / (n + μ)

    @property
    def shift(self) -> int:
        return self.value


@dataclass(frozen=True)
class SumResult:
    """
    Value of a series evaluation.

    terms_used is the truncation N of a direct sum (0 for a closed form)
    and err_estimate bounds the absolute truncation error when N > 0.
    """
    value: complex
    terms_used: int = 0
    err_estimate: float = 0.0


@dataclass(frozen=True)
class SweepRecord:
    """One cell of the attractor diagram."""
    A: float
    Delta: float
    xbar_solved: float
    ratio: float
    force: float
    power: float
    ok: bool = True

    def row(self) -> list:
        return [self.A, self.Delta, self.xbar_solved, self.ratio,
                self.force, self.power, self.ok]


@dataclass(frozen=True)
class LimitCycle:
    """A zero r0 of γ_eff; stable when γ_eff crosses upward."""
    r0: float
    slope: float
    stable: bool

    def row(self) -> list:
        return [self.r0, self.slope, self.stable]


@dataclass(frozen=True)
class PartialFractionConstants:
    """
    Constants reducing the diffusion denominators to linear ones:
    B, C1-C3 for D(r), A_w for the Wigner terms, beta = ω_m − 2iκ.
    """
    B: complex
    C1: complex
    C2: complex
    C3: complex
    A_w: complex
    beta: complex


@dataclass(frozen=True)
class OracleReport:
    """
    Closed form against an independent oracle at one grid point. Real
    quantities leave the imaginary parts at zero.
    """
    quantity: str
    point_id: str
    closed_form: float
    oracle: float
    rel_err: float
    terms_or_steps: int
    tolerance: float
    closed_imag: float = 0.0
    oracle_imag: float = 0.0

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tolerance

    def row(self) -> list:
        return [self.quantity, self.point_id, self.closed_form, self.oracle,
                self.rel_err, self.terms_or_steps,
                self.closed_imag, self.oracle_imag]
