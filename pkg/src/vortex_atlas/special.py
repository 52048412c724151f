"""Motions with lam = 0 or G = 0: absolute equilibria (L = 0), rigid
translations (G = 0), and the mutual-distance system for rotating
configurations when the total strength vanishes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .vortexcore import (
    CollisionError,
    EquilibriumCertificate,
    MutualDistanceState,
    PlanarConfiguration,
    Vorticities,
    certify,
    to_mutual_distances,
    velocities,
)


class NecessaryConditionError(ValueError):
    """The strengths violate L = 0 (equilibria) or G = 0 (translations)."""


class DegenerateParameterError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class SpecialCaseResult:
    kind: str
    configurations: tuple
    translation_velocity: Optional[tuple] = None
    certificates: tuple = field(default_factory=tuple)
    max_speed: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "configurations": [c.to_json() for c in self.configurations],
            "translation_velocity": list(self.translation_velocity) if self.translation_velocity else None,
            "certificates": [c.to_json() for c in self.certificates],
        }


def _as_vorticities(gammas) -> Vorticities:
    return gammas if isinstance(gammas, Vorticities) else Vorticities(tuple(gammas))


def _is_zero(v, tol=1e-12) -> bool:
    return v == 0 if isinstance(v, (int, Fraction)) else abs(v) <= tol


def absolute_equilibria(gammas) -> SpecialCaseResult:
    """The two stationary configurations with z3 = (1, 0) and z4 = (0, 0).

    z1 = (2 G4 + G2, +-G2 sqrt3) / (2 (G2 + G3 + G4)),
    z2 = (2 G4 + G1, -+G1 sqrt3) / (2 (G1 + G3 + G4)).
    """
    v = _as_vorticities(gammas)
    g1, g2, g3, g4 = v.gamma
    if not _is_zero(v.angular_momentum):
        raise NecessaryConditionError(f"L = {v.angular_momentum} != 0")
    d1, d2 = g2 + g3 + g4, g1 + g3 + g4
    if _is_zero(d1) or _is_zero(d2):
        raise DegenerateParameterError("G2 + G3 + G4 or G1 + G3 + G4 vanishes")
    r3 = math.sqrt(3)
    cfgs = []
    for sign in (1, -1):
        z1 = (float(2 * g4 + g2) / float(2 * d1), sign * float(g2) * r3 / float(2 * d1))
        z2 = (float(2 * g4 + g1) / float(2 * d2), -sign * float(g1) * r3 / float(2 * d2))
        cfgs.append(PlanarConfiguration((z1, z2, (1.0, 0.0), (0.0, 0.0)), v))
    speed = max(float(np.abs(velocities(c)).max()) for c in cfgs)
    certs = tuple(certify(c) for c in cfgs)
    return SpecialCaseResult("absolute-equilibrium", tuple(cfgs), None, certs, speed)


# ---------------------------------------------------------------------------
# G = 0: rotating configurations in mutual distances


def weighted_sums(s: MutualDistanceState, gammas=None) -> tuple:
    """S_i = sum_{j != i} G_j r_ij^2."""
    g = gammas if gammas is not None else s.gamma
    return tuple(sum(g[j] * s.r2(i, j) for j in range(4) if j != i) for i in range(4))


def zero_total_residuals(s: MutualDistanceState, s0, gammas=None) -> tuple:
    """Residuals of S_1 = ... = S_4 = s0 and of the chain
    1/s12 + 1/s34 = 1/s13 + 1/s24 = 1/s14 + 1/s23 (s_ij = r_ij^2), the chain
    with denominators cleared."""
    g = tuple(gammas if gammas is not None else (s.gamma or (1, 1, 1, -3)))
    if sum(g) != 0:
        raise NecessaryConditionError(f"total strength {sum(g)} != 0")
    if any(r == 0 for r in s.rho):
        raise CollisionError("vanishing mutual distance")
    S = weighted_sums(s, g)
    a, c, d, e, f, b = s.rho  # r12, r13, r14, r23, r24, r34
    chain = (
        (a + b) * c * f - (c + f) * a * b,
        (c + f) * d * e - (d + e) * c * f,
    )
    return tuple(Si - s0 for Si in S) + chain


def _kite_rho(k: float, l: float) -> tuple:
    side3, side4 = 1 + k * k, 1 + l * l
    return (4.0, side3, side4, side3, side4, (k + l) ** 2)


def _kite_system(k: float, l: float) -> np.ndarray:
    st = MutualDistanceState(_kite_rho(k, l), None, None, (1, 1, 1, -3))
    S = weighted_sums(st)
    res = zero_total_residuals(st, S[0])
    return np.array([res[2], res[3], res[4]])


def zero_total_kite(seed=(4.4, -1.5), tol: float = 1e-14, max_iter: int = 60) -> PlanarConfiguration:
    """Gauss-Newton on the symmetric reduction of the G = 0 system in the kite
    chart (units at (+-1, 0), vortex 3 at (0, -k), vortex 4 at (0, l))."""
    x = np.array(seed, dtype=float)
    for _ in range(max_iter):
        r = _kite_system(*x)
        J = np.empty((3, 2))
        for n in range(2):
            h = 1e-7 * (1 + abs(x[n]))
            e = np.zeros(2)
            e[n] = h
            J[:, n] = (_kite_system(*(x + e)) - _kite_system(*(x - e))) / (2 * h)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        x = x + step
        if np.linalg.norm(step) <= tol * (1 + np.linalg.norm(x)):
            break
    k, l = float(x[0]), float(x[1])
    return PlanarConfiguration(((-1.0, 0.0), (1.0, 0.0), (0.0, -k), (0.0, l)), Vorticities((1, 1, 1, -3)))


def zero_total_relative_equilibria() -> SpecialCaseResult:
    """The two symmetric rotating shapes at G = (1, 1, 1, -3): the equilateral
    triangle with vortex 4 at its center and the concave kite with vortex 4
    inside the isosceles triangle of the unit vortices."""
    r3 = math.sqrt(3)
    tri = PlanarConfiguration(((-1.0, 0.0), (1.0, 0.0), (0.0, -r3), (0.0, -1 / r3)), Vorticities((1, 1, 1, -3)))
    cfgs = (tri, zero_total_kite())
    return SpecialCaseResult("relative-equilibrium", cfgs, None, tuple(certify(c) for c in cfgs))


# ---------------------------------------------------------------------------
# rigid translations


def _translation_system(w: np.ndarray, g: np.ndarray) -> np.ndarray:
    """w = (z3, z4, U) with z1 = 0, z2 = 1; rows i = 1..3 of sum_j G_j / (z_i - z_j) = U."""
    z = np.array([0.0, 1.0, w[0], w[1]], dtype=complex)
    out = np.empty(3, dtype=complex)
    for i in range(3):
        out[i] = sum(g[j] / (z[i] - z[j]) for j in range(4) if j != i) - w[2]
    return out


def _translation_jacobian(w: np.ndarray, g: np.ndarray) -> np.ndarray:
    z = np.array([0.0, 1.0, w[0], w[1]], dtype=complex)
    J = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for n, m in ((0, 2), (1, 3)):
            if m == i:
                J[i, n] = -sum(g[j] / (z[i] - z[j]) ** 2 for j in range(4) if j != i)
            else:
                J[i, n] = g[m] / (z[i] - z[m]) ** 2
        J[i, 2] = -1.0
    return J


def _newton_translation(w0, g, tol=1e-14, max_iter=80):
    w = np.array(w0, dtype=complex)
    for _ in range(max_iter):
        try:
            step = np.linalg.solve(_translation_jacobian(w, g), -_translation_system(w, g))
        except np.linalg.LinAlgError:
            return None
        w = w + step
        if not np.all(np.isfinite(w)) or np.abs(w).max() > 1e6:
            return None
        if np.abs(step).max() <= tol * (1 + np.abs(w).max()):
            break
    z = np.array([0.0, 1.0, w[0], w[1]])
    gaps = [abs(z[i] - z[j]) for i in range(4) for j in range(i + 1, 4)]
    if min(gaps) < 1e-6 or np.abs(_translation_system(w, g)).max() > 1e-10 * (1 + abs(w[2])):
        return None
    return w


def _search_chunk(args):
    gammas, seed, starts = args
    rng = np.random.default_rng(seed)
    g = np.array([float(x) for x in gammas])
    found = []
    for _ in range(starts):
        z3, z4 = rng.normal(scale=1.5, size=2) + 1j * rng.normal(scale=1.5, size=2)
        z = np.array([0.0, 1.0, z3, z4])
        if min(abs(z[i] - z[j]) for i in range(4) for j in range(i + 1, 4)) < 1e-3:
            continue
        u = sum(g[j] / (z[0] - z[j]) for j in range(1, 4))
        w = _newton_translation((z3, z4, u), g)
        if w is not None and abs(w[2]) > 1e-8:
            found.append(tuple(complex(v) for v in w))
    return found


SEARCH_CHUNKS = 16


def _fingerprint(w, digits=7) -> tuple:
    return tuple(round(v, digits) + 0.0 for z in w[:2] for v in (z.real, z.imag))


def rigid_translation_search(gammas, eps: float = 1e-10, starts: int = 1600, seed: int = 0,
                             workers: int = 1) -> SpecialCaseResult:
    """Multi-start Newton for configurations whose vortices share one velocity.

    Positions are normalised to z1 = 0, z2 = 1, which removes translation,
    rotation and scaling; mirror images remain distinct.  Found solutions are
    deduplicated by rounded coordinates, certified, and returned in a
    deterministic order independent of ``workers``.
    """
    v = _as_vorticities(gammas)
    if not _is_zero(v.total):
        raise NecessaryConditionError(f"total strength {v.total} != 0")
    chunks = SEARCH_CHUNKS
    per = -(-starts // chunks)
    jobs = [(v.gamma, (seed, n), per) for n in range(chunks)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_search_chunk, jobs))
    else:
        parts = [_search_chunk(j) for j in jobs]
    unique = {}
    for part in parts:
        for w in part:
            unique.setdefault(_fingerprint(w), w)
    cfgs, certs, vel = [], [], []
    for key in sorted(unique):
        w = unique[key]
        pts = tuple((float(z.real), float(z.imag)) for z in (0.0, 1.0, w[0], w[1]))
        cfg = PlanarConfiguration(pts, v)
        cert = certify(cfg, eps)
        if cert.kind != "translation" or not cert.verdict:
            continue
        cfgs.append(cfg)
        certs.append(cert)
        vel.append(cert.translation_velocity)
    return SpecialCaseResult("rigid-translation", tuple(cfgs), tuple(vel) if vel else None, tuple(certs))


def max_velocity_spread(cfg: PlanarConfiguration) -> float:
    """Largest pairwise difference of vortex velocities."""
    v = velocities(cfg)
    return float(max(np.abs(v[i] - v[j]).max() for i in range(4) for j in range(i + 1, 4)))
