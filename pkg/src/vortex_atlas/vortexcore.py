"""Four-vortex configurations, their conserved quantities, mutual-distance
coordinates and equilibrium certificates.

Velocities follow the usual point-vortex law

    dx_i/dt = -sum_j G_j (y_i - y_j) / r_ij^2,   dy_i/dt = sum_j G_j (x_i - x_j) / r_ij^2,

so a relative equilibrium rotates rigidly with counter-clockwise rate
``omega``.  The angular velocity reported here is ``lam = -L / (2 I)``, which
equals ``-omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}
DEFAULT_TOL = 1e-10


class CollisionError(ValueError):
    pass


class DegenerateConfigurationError(ArithmeticError):
    pass


class SymmetricDegeneracy(ArithmeticError):
    """A difference quotient has a vanishing denominator; use the lambda' forms."""

    def __init__(self, pairs):
        super().__init__(f"vanishing distance differences for ratio pairs {pairs}")
        self.pairs = pairs


def _pair(i: int, j: int) -> int:
    return PAIR_INDEX[(min(i, j), max(i, j))]


@dataclass(frozen=True)
class Vorticities:
    gamma: tuple

    def __post_init__(self):
        if len(self.gamma) != 4:
            raise ValueError("need four vortex strengths")
        object.__setattr__(self, "gamma", tuple(self.gamma))

    @classmethod
    def three_unit(cls, gamma4) -> "Vorticities":
        return cls((1, 1, 1, gamma4))

    @property
    def gamma4(self):
        return self.gamma[3]

    @property
    def total(self):
        return sum(self.gamma)

    @property
    def angular_momentum(self):
        return sum(a * b for a, b in combinations(self.gamma, 2))


@dataclass(frozen=True)
class VortexQuantities:
    total_vorticity: float
    angular_momentum: float
    moment_of_vorticity: tuple
    center_of_vorticity: Optional[tuple]
    moment_of_inertia: float


@dataclass(frozen=True)
class PlanarConfiguration:
    positions: tuple
    vorticities: Vorticities

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.positions)
        if len(pts) != 4 or any(len(p) != 2 for p in pts):
            raise ValueError("need four planar points")
        object.__setattr__(self, "positions", pts)
        if isinstance(self.vorticities, (list, tuple)):
            object.__setattr__(self, "vorticities", Vorticities(tuple(self.vorticities)))
        for i, j in PAIRS:
            (a, b), (c, d) = pts[i], pts[j]
            if (a - c) ** 2 + (b - d) ** 2 == 0:
                raise CollisionError(f"vortices {i + 1} and {j + 1} coincide")

    @classmethod
    def from_json(cls, obj: dict) -> "PlanarConfiguration":
        return cls(tuple(tuple(p) for p in obj["positions"]), Vorticities(tuple(obj["gamma"])))

    def to_json(self) -> dict:
        return {
            "positions": [[float(x), float(y)] for x, y in self.positions],
            "gamma": [_jsonable(g) for g in self.vorticities.gamma],
        }

    def as_array(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.positions])

    def transformed(self, angle: float = 0.0, scale: float = 1.0, shift=(0.0, 0.0)) -> "PlanarConfiguration":
        c, s = math.cos(angle), math.sin(angle)
        pts = tuple(
            (scale * (c * x - s * y) + shift[0], scale * (s * x + c * y) + shift[1])
            for x, y in self.as_array()
        )
        return PlanarConfiguration(pts, self.vorticities)


def _jsonable(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    return v


def quantities(cfg: PlanarConfiguration) -> VortexQuantities:
    g = cfg.vorticities.gamma
    total = sum(g)
    L = cfg.vorticities.angular_momentum
    M = (sum(gi * p[0] for gi, p in zip(g, cfg.positions)), sum(gi * p[1] for gi, p in zip(g, cfg.positions)))
    if total != 0:
        c = (M[0] / total, M[1] / total)
        I = sum(gi * ((p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2) for gi, p in zip(g, cfg.positions)) / 2
    else:
        c = None
        I = sum(gi * (p[0] ** 2 + p[1] ** 2) for gi, p in zip(g, cfg.positions)) / 2
    return VortexQuantities(total, L, M, c, I)


def angular_velocity(q: VortexQuantities):
    if q.moment_of_inertia == 0:
        raise DegenerateConfigurationError("moment of inertia vanishes")
    return -q.angular_momentum / (2 * q.moment_of_inertia)


def velocities(cfg: PlanarConfiguration) -> np.ndarray:
    z = cfg.as_array()
    g = np.array([float(v) for v in cfg.vorticities.gamma])
    v = np.zeros((4, 2))
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            dx, dy = z[i] - z[j]
            r2 = dx * dx + dy * dy
            v[i, 0] -= g[j] * dy / r2
            v[i, 1] += g[j] * dx / r2
    return v


# ---------------------------------------------------------------------------
# mutual distances


def _det(mat):
    """Determinant; exact when every entry is int/Fraction."""
    if all(isinstance(v, (int, Fraction)) for row in mat for v in row):
        a = [[Fraction(v) for v in row] for row in mat]
        n = len(a)
        det = Fraction(1)
        for k in range(n):
            piv = next((r for r in range(k, n) if a[r][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for r in range(k + 1, n):
                f = a[r][k] / a[k][k]
                if f:
                    for c in range(k, n):
                        a[r][c] -= f * a[k][c]
        return det
    return float(np.linalg.det(np.array(mat, dtype=float)))


def cayley_menger(rho: Sequence) -> float:
    r12, r13, r14, r23, r24, r34 = rho
    return _det([
        [0, 1, 1, 1, 1],
        [1, 0, r12, r13, r14],
        [1, r12, 0, r23, r24],
        [1, r13, r23, 0, r34],
        [1, r14, r24, r34, 0],
    ])


def oriented_areas(positions) -> tuple:
    """A_i is the signed area of the triangle on the other three vortices, with
    signs alternating so that A_1 + A_2 + A_3 + A_4 = 0."""
    out = []
    for i in range(4):
        (x1, y1), (x2, y2), (x3, y3) = [positions[j] for j in range(4) if j != i]
        tri = ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)) / 2
        out.append(tri if i % 2 == 0 else -tri)
    return tuple(out)


@dataclass(frozen=True)
class MutualDistanceState:
    rho: tuple
    areas: Optional[tuple] = None
    lambda_prime: Optional[float] = None
    gamma: Optional[tuple] = None

    def __post_init__(self):
        if len(self.rho) != 6:
            raise ValueError("need six squared distances")
        if any(r <= 0 for r in self.rho):
            raise CollisionError("squared distances must be positive")

    def r2(self, i: int, j: int):
        return self.rho[_pair(i, j)]

    @property
    def s(self) -> tuple:
        return tuple(Fraction(1) / r if isinstance(r, (int, Fraction)) else 1 / r for r in self.rho)

    @property
    def cayley_menger(self):
        return cayley_menger(self.rho)

    def with_lambda_prime(self, lp) -> "MutualDistanceState":
        return MutualDistanceState(self.rho, self.areas, lp, self.gamma)


def to_mutual_distances(cfg: PlanarConfiguration, lambda_prime=None) -> MutualDistanceState:
    pts = cfg.positions
    rho = tuple((pts[i][0] - pts[j][0]) ** 2 + (pts[i][1] - pts[j][1]) ** 2 for i, j in PAIRS)
    return MutualDistanceState(rho, oriented_areas(pts), lambda_prime, cfg.vorticities.gamma)


def eliminated_lambda_prime(s: MutualDistanceState):
    """lambda' from equality of the first two Dziobek products (falls back to other pairings)."""
    s12, s13, s14, s23, s24, s34 = s.s
    pairings = ((s12, s34, s13, s24), (s13, s24, s14, s23), (s14, s23, s12, s34))
    best = max(pairings, key=lambda t: abs(t[0] + t[1] - t[2] - t[3]))
    a, b, c, d = best
    den = a + b - c - d
    if den == 0:
        raise SymmetricDegeneracy("lambda'")
    return (c * d - a * b) / den


def dziobek_products(s: MutualDistanceState, lp=None) -> tuple:
    if lp is None:
        lp = s.lambda_prime if s.lambda_prime is not None else eliminated_lambda_prime(s)
    s12, s13, s14, s23, s24, s34 = s.s
    return ((s12 + lp) * (s34 + lp), (s13 + lp) * (s24 + lp), (s14 + lp) * (s23 + lp))


def dziobek_residuals(s: MutualDistanceState) -> tuple:
    p1, p2, p3 = dziobek_products(s)
    return (p1 - p2, p2 - p3)


def distance_relation_residual(s: MutualDistanceState):
    r12, r13, r14, r23, r24, r34 = s.rho
    return (r13 - r12) * (r23 - r34) * (r24 - r14) - (r12 - r14) * (r24 - r34) * (r13 - r23)


_RATIO_QUOTIENTS = {
    # (i, j): (numerator pair a, numerator pair b, denominator pair c, denominator pair d)
    (0, 1): ((1, 2), (1, 3), (0, 2), (0, 3)),
    (0, 2): ((1, 2), (2, 3), (0, 1), (0, 3)),
    (0, 3): ((1, 3), (2, 3), (0, 1), (0, 2)),
    (1, 2): ((0, 2), (2, 3), (0, 1), (1, 3)),
    (1, 3): ((0, 3), (2, 3), (0, 1), (1, 2)),
    (2, 3): ((0, 3), (1, 3), (0, 2), (1, 2)),
}


def vorticity_ratios(s: MutualDistanceState) -> dict:
    """The six ratios G_i A_j / (G_j A_i) read off the shape alone.

    Difference quotients of inverse squared distances are used; where a
    denominator vanishes the lambda' form is used if lambda' is known, else
    :class:`SymmetricDegeneracy` is raised.
    """
    inv = s.s
    out, bad = {}, []
    for key, (a, b, c, d) in _RATIO_QUOTIENTS.items():
        num = inv[_pair(*a)] - inv[_pair(*b)]
        den = inv[_pair(*c)] - inv[_pair(*d)]
        if den != 0 and abs(den) > 1e-13 * max(abs(x) for x in inv):
            out[key] = num / den
        elif s.lambda_prime is not None:
            lp = s.lambda_prime
            out[key] = (inv[_pair(*a)] + lp) / (inv[_pair(*c)] + lp)
        else:
            bad.append(key)
    if bad:
        raise SymmetricDegeneracy(bad)
    return out


def recover_gamma4(s: MutualDistanceState, gamma1=1):
    """Strength of vortex 4 implied by the shape, given G_1 and the areas."""
    if s.areas is None:
        raise ValueError("areas are required")
    ratio = vorticity_ratios(s)[(0, 3)]
    return gamma1 * s.areas[3] / (s.areas[0] * ratio)


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class EquilibriumCertificate:
    kind: str
    lam: float
    center: Optional[tuple]
    residual_motion: float
    residual_dziobek: Optional[float]
    residual_relation: Optional[float]
    tol: float
    verdict: bool
    translation_velocity: Optional[tuple] = None
    lambda_prime: Optional[float] = None
    notes: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.lam,
            "center": list(self.center) if self.center is not None else None,
            "residual_motion": self.residual_motion,
            "residual_dziobek": self.residual_dziobek,
            "residual_relation": self.residual_relation,
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
            "lambda_prime": self.lambda_prime,
            "translation_velocity": list(self.translation_velocity) if self.translation_velocity else None,
        }


def _is_collinear(z: np.ndarray, rel: float = 1e-9) -> bool:
    d = z - z.mean(axis=0)
    sv = np.linalg.svd(d, compute_uv=False)
    return sv[1] <= rel * sv[0]


def certify(cfg: PlanarConfiguration, tol: float = DEFAULT_TOL) -> EquilibriumCertificate:
    """Decide whether ``cfg`` moves as an absolute equilibrium, a rigid
    translation or a rigid rotation, with residuals relative to the natural
    velocity scale sum|G| / r_min."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = cfg.as_array()
    g = [float(v) for v in cfg.vorticities.gamma]
    v = velocities(cfg)
    rmin = min(np.linalg.norm(z[i] - z[j]) for i, j in PAIRS)
    vscale = sum(abs(x) for x in g) / rmin
    size = max(np.linalg.norm(z - z.mean(axis=0), axis=1).max(), rmin)
    notes = []

    if np.abs(v).max() <= tol * vscale:
        return EquilibriumCertificate("absolute", 0.0, None, float(np.abs(v).max() / vscale), None, None, tol, True,
                                      notes=("all velocities vanish",))

    # least-squares fit v_j = omega * J z_j + t
    A = np.zeros((8, 3))
    b = v.reshape(-1)
    for j in range(4):
        A[2 * j] = (-z[j, 1], 1.0, 0.0)
        A[2 * j + 1] = (z[j, 0], 0.0, 1.0)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    omega, tx, ty = sol
    motion = float(np.abs(A @ sol - b).max() / vscale)

    if abs(omega) * size <= tol * vscale:
        vbar = v.mean(axis=0)
        spread = float(np.abs(v - vbar).max() / vscale)
        return EquilibriumCertificate("translation", 0.0, None, spread, None, None, tol, spread <= tol,
                                      translation_velocity=(float(vbar[0]), float(vbar[1])))

    lam = -omega
    center = (-ty / omega, tx / omega)
    res_dz = res_rel = None
    lp = None
    total = sum(g)
    if _is_collinear(z):
        notes.append("collinear: Dziobek relations not applicable")
    elif total == 0:
        notes.append("zero total strength: lambda' undefined")
    else:
        lp = float(lam / total)
        s = to_mutual_distances(cfg, lp)
        sc = max(s.s) + abs(lp)
        res_dz = float(max(abs(r) for r in dziobek_residuals(s)) / sc**2)
        res_rel = float(abs(distance_relation_residual(s)) / max(s.rho) ** 3)
    checks = [motion] + [r for r in (res_dz, res_rel) if r is not None]
    return EquilibriumCertificate("relative", float(lam), (float(center[0]), float(center[1])), motion, res_dz,
                                  res_rel, tol, all(c <= tol for c in checks), lambda_prime=lp, notes=tuple(notes))
