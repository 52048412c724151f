"""Rhombus shapes with the unit pair 1,2 on one diagonal and 3,4 on the other.

With x = r34 / r12 the closed forms are

    G4 = (x^2 - 3) / (1 - 3 x^2),   x^2 = (G4 + 3) / (3 G4 + 1),   lam r12^2 = -3 (1 + G4).

Two branches carry positive x^2: family A for G4 > -1/3 and family B for
G4 < -3, the latter born from the 3-4 collision at G4 = -3.  Only the square
(G4 = 1) survives full certification; every record carries its certificate so
callers can tell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .vortexcore import (
    EquilibriumCertificate,
    MutualDistanceState,
    PlanarConfiguration,
    Vorticities,
    certify,
    distance_relation_residual,
    dziobek_residuals,
)

FAMILY_INTERVALS = {"A": (Fraction(-1, 3), math.inf), "B": (-math.inf, Fraction(-3))}
# intervals in which the closed-form statement places the two families
STATED_INTERVALS = {"A": (Fraction(-1, 3), Fraction(0)), "B": (-math.inf, Fraction(-3))}


class RhombusPoleError(ZeroDivisionError):
    pass


class NoRhombus(ValueError):
    """x^2 <= 0: no real rhombus at this strength."""


def _exact(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    return v


def gamma4_of_ratio(x):
    x2 = _exact(x) * _exact(x)
    den = 1 - 3 * x2
    if den == 0:
        raise RhombusPoleError("x = 1/sqrt(3)")
    if isinstance(x, float) and abs(den) < 1e-14:
        raise RhombusPoleError("x = 1/sqrt(3)")
    return (x2 - 3) / den


def ratio_of_gamma4(gamma4):
    """Squared diagonal ratio x^2; raises :class:`NoRhombus` when it is not positive."""
    g = _exact(gamma4)
    den = 3 * g + 1
    if den == 0:
        raise RhombusPoleError("G4 = -1/3")
    x2 = (g + 3) / den
    if x2 <= 0:
        raise NoRhombus(f"x^2 = {x2} at G4 = {gamma4}")
    return x2


def angular_velocity_scaled(gamma4):
    """lam * r12^2 = -L / (2 I) * r12^2 on the rhombus (I = 2 at r12 = 2)."""
    return -3 * (1 + _exact(gamma4))


def family_of(gamma4) -> Optional[str]:
    g = _exact(gamma4)
    for name, (lo, hi) in FAMILY_INTERVALS.items():
        if lo < g < hi:
            return name
    return None


def sign_band(x: float) -> int:
    """Sign of G4 predicted from x alone: +1 inside (1/sqrt3, sqrt3), -1 outside, 0 on the boundary."""
    x2 = x * x
    if x2 == 3 or x2 == Fraction(1, 3):
        return 0
    return 1 if Fraction(1, 3) < x2 < 3 else -1


def squared_distances(gamma4) -> tuple:
    """(r12^2, r13^2, r14^2, r23^2, r24^2, r34^2) at r12 = 2, exact for rational G4."""
    x2 = ratio_of_gamma4(gamma4)
    side = 1 + x2
    return (Fraction(4) if isinstance(x2, Fraction) else 4.0, side, side, side, side, 4 * x2)


def embed(gamma4) -> PlanarConfiguration:
    """Unit vortices at (-1, 0), (1, 0); vortex 3 at (0, -x), vortex 4 at (0, x)."""
    x = math.sqrt(float(ratio_of_gamma4(gamma4)))
    return PlanarConfiguration(((-1.0, 0.0), (1.0, 0.0), (0.0, -x), (0.0, x)), Vorticities.three_unit(gamma4))


def exact_moment_of_inertia(gamma4):
    """I = sum_{i<j} G_i G_j r_ij^2 / (2 G) on the r12 = 2 embedding."""
    g = _exact(gamma4)
    gam = (1, 1, 1, g)
    rho = squared_distances(g)
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    return sum(gam[i] * gam[j] * r for (i, j), r in zip(pairs, rho)) / (2 * sum(gam))


@dataclass(frozen=True)
class ExactCheck:
    gamma4: Fraction
    relation_residual: Fraction
    dziobek_residuals: tuple
    lambda_scaled: Fraction
    lambda_scaled_closed_form: Fraction

    @property
    def relation_holds(self) -> bool:
        return self.relation_residual == 0

    @property
    def lambda_matches(self) -> bool:
        return self.lambda_scaled == self.lambda_scaled_closed_form

    @property
    def dziobek_holds(self) -> bool:
        return all(r == 0 for r in self.dziobek_residuals)


def exact_check(gamma4) -> ExactCheck:
    """Rational evaluation of the eliminated distance relation, the Dziobek
    products and lam r12^2 = -L / (2 I) r12^2 on the embedding."""
    g = Fraction(gamma4)
    rho = squared_distances(g)
    total = 3 + g
    L = Vorticities.three_unit(g).angular_momentum
    lam = -L / (2 * exact_moment_of_inertia(g))
    # the Dziobek multiplier is lambda' = lam / G with lam = -L / (2 I)
    state = MutualDistanceState(rho, None, lam / total, (1, 1, 1, g))
    return ExactCheck(g, distance_relation_residual(state), tuple(dziobek_residuals(state)), lam * rho[0],
                      angular_velocity_scaled(g))


@dataclass(frozen=True)
class RhombusFamily:
    gamma4: object
    x_squared: object
    side_ratio_sq: object
    lambda_scaled: object
    family: str
    printed_side_ratio_sq: object
    certificate: Optional[EquilibriumCertificate] = None

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.verdict

    @property
    def configuration(self) -> PlanarConfiguration:
        return embed(self.gamma4)

    @property
    def side_ratio_conflict(self) -> bool:
        return self.printed_side_ratio_sq != self.side_ratio_sq

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "gamma4": float(self.gamma4),
            "x_squared": float(self.x_squared),
            "side_ratio_sq": float(self.side_ratio_sq),
            "lambda_scaled": float(self.lambda_scaled),
            "certified": self.certified,
            "configuration": self.configuration.to_json(),
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def enumerate_families(gamma4, tol: float = 1e-10) -> list:
    fam = family_of(gamma4)
    if fam is None:
        return []
    g = _exact(gamma4)
    x2 = ratio_of_gamma4(g)
    cert = certify(embed(g), tol)
    return [RhombusFamily(g, x2, (1 + x2) / 4, angular_velocity_scaled(g), fam, g + 1, cert)]


SWEEP_COLUMNS = ("gamma4", "x_squared", "side_ratio_sq", "lambda_scaled", "family", "admissible",
                 "in_stated_interval", "certified")


def sweep_rows(lo: float, hi: float, samples: int) -> list:
    """Rows for the x-versus-G4 curve; inadmissible strengths get empty ratios."""
    rows = []
    for g in np.linspace(lo, hi, samples):
        g = float(g)
        fam = family_of(g)
        row = dict.fromkeys(SWEEP_COLUMNS, "")
        row.update(gamma4=g, lambda_scaled=angular_velocity_scaled(g), admissible=fam is not None,
                   in_stated_interval=False, certified=False)
        if fam is not None:
            x2 = ratio_of_gamma4(g)
            lo_s, hi_s = STATED_INTERVALS[fam]
            row.update(x_squared=x2, side_ratio_sq=(1 + x2) / 4, family=fam,
                       in_stated_interval=bool(lo_s < g < hi_s), certified=certify(embed(g)).verdict)
        rows.append(row)
    return rows
