"""Kite relative equilibria on the (k, l) chart.

Unit vortices 1, 2 sit at (-1, 0), (1, 0), vortex 3 (unit) at (0, -k) and
vortex 4 (strength G) at (0, l), with k + l > 0.  The reduced equilibrium
conditions are ``f(k, l) = 0`` together with ``G = gamma4_of(k, l)``.  In the
open half-plane k + l > 0 the curve f = 0 has two branches: an upper one
(l > 0) and a lower one in the fourth quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .ratpoly import (
    BivariatePolynomial,
    RationalPolynomial,
    isolate_roots,
    nonzero_part,
    refine_root,
    resultant,
)
from .vortexcore import EquilibriumCertificate, PlanarConfiguration, certify

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
BARYCENTER = (SQRT3, -1 / SQRT3)
DUPLICATE_TOL = 1e-8


class KiteDomainError(ValueError):
    pass


class PoleError(ArithmeticError):
    """k^2 + 2kl - 1 = 0: G has a pole (or the removable point at the barycenter)."""


class TranscriptionFailure(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# closed forms


def f(k: float, l: float) -> float:
    if k + l == 0:
        raise KiteDomainError("k + l = 0")
    s = k + l
    return s * (1 / (1 + k * k) - 1 / (s * s)) + 2 * l * (0.25 - 1 / (1 + l * l))


def gamma4_numerator(k, l):
    return k * (3 - k * k) * (1 + l * l) * (k + l)


def gamma4_denominator(k, l):
    return 2 * (1 + k * k) * (k * k + 2 * k * l - 1)


def gamma4_of(k: float, l: float) -> float:
    den = gamma4_denominator(k, l)
    if den == 0:
        raise PoleError(f"pole of G at ({k}, {l})")
    return gamma4_numerator(k, l) / den


def pole_curve(k: float) -> float:
    """The curve l = (1 - k^2) / (2k) on which G has its poles."""
    return (1 - k * k) / (2 * k)


_K = BivariatePolynomial.var("x")
_L = BivariatePolynomial.var("y")

# f times 4(1+k^2)(1+l^2)(k+l), halved
F_CLEARED = _K**3 * _L**3 - 3 * _K**3 * _L + _K**2 * _L**4 - 3 * _K**2 * _L**2 + 5 * _K * _L**3 + _K * _L \
    + 3 * _L**4 - 3 * _L**2 - 2

# decomposition F = f1 + 3 l^2 (l^2 - 1) - 2
F1 = _K * _L * (_K * (_L**2 - 3) * (_K + _L) + 1 + 5 * _L**2)
F1_PRINTED = _K * _L * (_K * (_L**2 + 3) * (_K + _L) + 1 + 5 * _L**2)

N_POLY = _K * (3 - _K**2) * (1 + _L**2) * (_K + _L)
D_POLY = 2 * (1 + _K**2) * (_K**2 + 2 * _K * _L - 1)

H1_PRINTED = BivariatePolynomial({
    (0, 0): 6, (0, 4): 36, (2, 0): -24, (0, 6): 9, (4, 0): -20, (6, 0): 24, (8, 0): -18, (0, 2): 9,
    (5, 5): 30, (4, 4): 304, (5, 3): 84, (9, 1): -3, (4, 6): -50, (9, 5): 1, (6, 6): 84, (5, 7): 32,
    (7, 3): 200, (6, 4): 208, (7, 5): 76, (1, 1): -27, (8, 4): 28, (9, 3): 6, (8, 6): 1, (3, 1): 12,
    (3, 3): 104, (1, 5): 9, (4, 2): 126, (2, 6): 36, (1, 3): 54, (2, 2): 36, (8, 2): 49, (3, 5): 252,
    (7, 1): -100, (5, 1): 102, (6, 2): -140,
})

R_PRINTED = RationalPolynomial([243, 0, 1455, 0, 324, 0, -18904, 0, 51534, 0, -61986, 0, 33264, 0, -1776, 0,
                                -2457, 0, 315, 0, 36])


def gamma_relation(gamma4) -> BivariatePolynomial:
    """N(k, l) - G D(k, l): vanishes where gamma4_of(k, l) = G (and at the removable point)."""
    return N_POLY - D_POLY * Fraction(gamma4)


def f_cleared_float(k: float, l: float) -> float:
    return F_CLEARED.eval_float(k, l)


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class KitePoint:
    k: float
    l: float

    def __post_init__(self):
        if not self.k + self.l > 0:
            raise KiteDomainError("need k + l > 0")

    def configuration(self, gamma4) -> PlanarConfiguration:
        return kite_configuration(self.k, self.l, gamma4)


def kite_configuration(k: float, l: float, gamma4) -> PlanarConfiguration:
    return PlanarConfiguration(((-1.0, 0.0), (1.0, 0.0), (0.0, -float(k)), (0.0, float(l))), (1, 1, 1, gamma4))


def chart_of(cfg_positions) -> tuple[float, float]:
    """Recover (k, l) from any similar copy of a kite embedding."""
    z = np.array([[float(a), float(b)] for a, b in cfg_positions])
    mid = (z[0] + z[1]) / 2
    half = (z[1] - z[0]) / 2
    scale = np.linalg.norm(half)
    ex = half / scale
    ey = np.array([-ex[1], ex[0]])
    k = -float(np.dot(z[2] - mid, ey)) / scale
    l = float(np.dot(z[3] - mid, ey)) / scale
    return k, l


def classify(k: float, l: float, tol: float = 1e-9) -> str:
    if abs(k - 1) < tol and abs(l - 1) < tol:
        return "square"
    if abs(k - BARYCENTER[0]) < tol and abs(l - BARYCENTER[1]) < tol:
        return "equilateral-barycenter"
    if k > 0 and l > 0:
        return "convex"
    if k < 0 < l:
        return "concave-exterior"
    if l < 0 < k:
        return "concave-interior"
    raise KiteDomainError(f"({k}, {l}) is not a kite chart point")


def hull_class(cfg: PlanarConfiguration) -> str:
    """Independent classification from the convex hull of the embedding."""
    z = cfg.as_array()

    def inside(p, a, b, c):
        def cr(u, v, w):
            return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
        s = [cr(a, b, p), cr(b, c, p), cr(c, a, p)]
        return all(x > 0 for x in s) or all(x < 0 for x in s)

    for i in range(4):
        others = [z[j] for j in range(4) if j != i]
        if inside(z[i], *others):
            if i == 3:
                return "concave-interior"
            return "concave-exterior"
    return "convex"


_ARC_ENDPOINTS = {
    "gamma1": ("P1", "P2"),
    "gamma2": ("P2", "P4"),
    "gamma3": ("P3", "P4"),
    "gamma4": ("P5", "P7"),
    "tail-upper-left": ("k -> -inf", "P3"),
    "tail-upper-right": ("P1", "k -> +inf"),
    "tail-lower-top": ("l -> 0-", "P5"),
    "tail-lower-bottom": ("P7", "l -> -sqrt3"),
}


def arc_of(k: float, l: float) -> str:
    if l > 0:
        if k < -SQRT3:
            return "tail-upper-left"
        if k < 0:
            return "gamma3"
        if k < SQRT2 - 1:
            return "gamma2"
        if k < SQRT3:
            return "gamma1"
        return "tail-upper-right"
    if l > _p5_l():
        return "tail-lower-top"
    if l > -1:
        return "gamma4"
    return "tail-lower-bottom"


@dataclass(frozen=True)
class KiteSolution:
    k: float
    l: float
    gamma4: float
    cls: str
    arc: str
    certificate: Optional[EquilibriumCertificate] = None
    resolved: bool = True
    f_residual: float = 0.0
    gamma_residual: float = 0.0

    @property
    def point(self) -> KitePoint:
        return KitePoint(self.k, self.l)

    def configuration(self) -> PlanarConfiguration:
        return kite_configuration(self.k, self.l, self.gamma4)

    def to_json(self) -> dict:
        cert = self.certificate
        return {
            "gamma4": float(self.gamma4),
            "k": float(self.k),
            "l": float(self.l),
            "class": self.cls,
            "arc": self.arc,
            "resolved": bool(self.resolved),
            "configuration": self.configuration().to_json(),
            "residuals": {
                "f": float(self.f_residual),
                "gamma4": float(self.gamma_residual),
                "motion": cert.residual_motion if cert else None,
                "dziobek": cert.residual_dziobek if cert else None,
                "relation": cert.residual_relation if cert else None,
            },
            "lambda": cert.lam if cert else None,
            "verdict": ("pass" if cert.verdict else "fail") if cert else None,
        }


# ---------------------------------------------------------------------------
# landmarks


@dataclass(frozen=True)
class LandmarkPoint:
    name: str
    k: float
    l: float
    condition: str
    limit: bool = False


def _k_sqrt3_polynomial() -> RationalPolynomial:
    """Norm of F(+-sqrt3, l): its roots are the l-values of f = 0 on k = +-sqrt3."""
    a = RationalPolynomial([-1, 0, -6, 0, 3])  # 3l^4 - 6l^2 - 1
    b = RationalPolynomial([0, -1, 0, 1])      # l^3 - l
    return a * a - b * b * 48


def _sqrt3_roots(eps=Fraction(1, 10**30)) -> list[tuple[float, float]]:
    """(k, l) with k = +-sqrt3 on f = 0, k + l > 0."""
    p = _k_sqrt3_polynomial()
    out = []
    for iv in isolate_roots(p):
        l = float(refine_root(p, iv, eps).midpoint)
        # F(k, l) = 2[(3l^4 - 6l^2 - 1) + k (4l^3 - 4l)/... ]: k = -(3l^4-6l^2-1) / (4(l^3 - l)) * 3 / k
        kk = -(3 * l**4 - 6 * l**2 - 1) * 3 / (4 * (l**3 - l)) / SQRT3
        k = SQRT3 if kk > 0 else -SQRT3
        if k + l > 0:
            out.append((k, l))
    return out


@lru_cache(maxsize=1)
def landmarks() -> tuple[LandmarkPoint, ...]:
    pts = {}
    for k, l in _sqrt3_roots():
        if k > 0 and l > 0:
            pts["P1"] = LandmarkPoint("P1", k, l, "k = sqrt3, f = 0, l > 0")
        elif k > 0 and abs(l - BARYCENTER[1]) < 1e-12:
            pts["P6"] = LandmarkPoint("P6", k, l, "k = sqrt3, f = 0, pole curve")
        elif k > 0:
            pts["P5"] = LandmarkPoint("P5", k, l, "k = sqrt3, f = 0, -1/sqrt3 < l < 0")
        else:
            pts["P3"] = LandmarkPoint("P3", k, l, "k = -sqrt3, f = 0")
    # k = 0: F(0, l) = 3l^4 - 3l^2 - 2
    p4 = RationalPolynomial([-2, 0, -3, 0, 3])
    l4 = [float(refine_root(p4, iv, Fraction(1, 10**30)).midpoint) for iv in isolate_roots(p4)]
    pts["P4"] = LandmarkPoint("P4", 0.0, max(l4), "k = 0, f = 0 (limit, not a solution)", limit=True)
    pts["P2"] = LandmarkPoint("P2", SQRT2 - 1, 1.0, "pole curve, l = 1")
    pts["P7"] = LandmarkPoint("P7", 1 + SQRT2, -1.0, "pole curve, l = -1")
    return tuple(pts[f"P{i}"] for i in range(1, 8))


def landmark(name: str) -> LandmarkPoint:
    return {p.name: p for p in landmarks()}[name]


def _p5_l() -> float:
    return landmark("P5").l


def landmark_residuals() -> dict:
    return {p.name: abs(f(p.k, p.l)) for p in landmarks()}


# ---------------------------------------------------------------------------
# continuation


@dataclass(frozen=True)
class CurveArc:
    id: str
    endpoints: tuple
    samples: tuple
    truncated: bool = False
    notes: tuple = field(default_factory=tuple)


_GK = F_CLEARED.derivative("x")
_GL = F_CLEARED.derivative("y")


def _correct(k: float, l: float, tol: float = 1e-12, iters: int = 20):
    for _ in range(iters):
        v = F_CLEARED.eval_float(k, l)
        gk, gl = _GK.eval_float(k, l), _GL.eval_float(k, l)
        n2 = gk * gk + gl * gl
        if n2 == 0:
            return None
        dk, dl = v * gk / n2, v * gl / n2
        k, l = k - dk, l - dl
        # distance to the curve, relative to the size of the point
        if math.hypot(dk, dl) <= tol * (1 + abs(k) + abs(l)):
            return k, l
    return None


def _tangent(k, l):
    gk, gl = _GK.eval_float(k, l), _GL.eval_float(k, l)
    n = math.hypot(gk, gl)
    return -gl / n, gk / n


def _inside(k, l, rect):
    kmin, kmax, lmin, lmax = rect
    return kmin <= k <= kmax and lmin <= l <= lmax and k + l > 1e-9


def _march(k, l, direction, step, rect, min_step, max_steps, corrector_tol):
    pts = []
    tk, tl = _tangent(k, l)
    tk, tl = direction * tk, direction * tl
    h = step
    truncated = False
    for _ in range(max_steps):
        hmax = 0.05 * max(1.0, abs(k), abs(l))
        h = min(h, hmax)
        pk, pl = k + h * tk, l + h * tl
        if not _inside(pk, pl, rect):
            break
        c = _correct(pk, pl, corrector_tol)
        ok = c is not None
        if ok:
            nk, nl = c
            ntk, ntl = _tangent(nk, nl)
            if ntk * tk + ntl * tl < 0:
                ntk, ntl = -ntk, -ntl
            jump = math.hypot(nk - k, nl - l)
            ok = ntk * tk + ntl * tl > 0.995 and jump < 2 * h
        if not ok:
            h /= 2
            if h < min_step:
                truncated = True
                break
            continue
        k, l, tk, tl = nk, nl, ntk, ntl
        pts.append((k, l))
        h = min(h * 1.5, hmax)
    return pts, truncated


def trace_curve(seed, step: float = 1e-2, bounds=(-1e3, 1e3, -1e3, 1e3), min_step: float = 1e-6,
                max_steps: int = 100000, corrector_tol: float = 1e-12, arc_id: str = "branch") -> CurveArc:
    """Predictor-corrector continuation of f = 0 through ``seed`` in both directions."""
    k0, l0 = (seed.k, seed.l) if isinstance(seed, KitePoint) else seed
    if step <= 0:
        raise ValueError("step must be positive")
    if isinstance(bounds, (int, float)):
        bounds = (-bounds, bounds, -bounds, bounds)
    if abs(f(k0, l0)) > 1e-6:
        raise KiteDomainError(f"seed ({k0}, {l0}) is not on f = 0")
    c = _correct(k0, l0, corrector_tol)
    if c is None:
        raise KiteDomainError("corrector failed at the seed")
    back, tb = _march(*c, -1, step, bounds, min_step, max_steps, corrector_tol)
    fwd, tf = _march(*c, 1, step, bounds, min_step, max_steps, corrector_tol)
    samples = tuple(reversed(back)) + (c,) + tuple(fwd)
    return CurveArc(arc_id, (samples[0], samples[-1]), samples, tb or tf)


@lru_cache(maxsize=8)
def branches(bound: float = 1e3) -> tuple[CurveArc, CurveArc]:
    """The two branches of f = 0 inside k + l > 0, clipped to |k|, |l| <= bound."""
    rect = (-bound, bound, -bound, bound)
    upper = trace_curve((1.0, 1.0), bounds=rect, arc_id="upper")
    p5 = landmark("P5")
    lower = trace_curve((p5.k, p5.l), bounds=rect, arc_id="lower")
    return upper, lower


def arcs(bound: float = 1e3) -> list[CurveArc]:
    """Split the traced branches into the named arcs."""
    out: dict[str, list] = {}
    for br in branches(bound):
        for k, l in br.samples:
            if abs(k) < 1e-12 or abs(l) < 1e-12:
                continue
            out.setdefault(arc_of(k, l), []).append((k, l))
    return [CurveArc(a, _ARC_ENDPOINTS[a], tuple(s)) for a, s in out.items()]


# ---------------------------------------------------------------------------
# solving


def _newton2(gamma4: float, k: float, l: float, iters: int = 50):
    G = gamma_relation(Fraction(gamma4))
    Gk, Gl = G.derivative("x"), G.derivative("y")
    for _ in range(iters):
        F = np.array([F_CLEARED.eval_float(k, l), G.eval_float(k, l)])
        J = np.array([[_GK.eval_float(k, l), _GL.eval_float(k, l)], [Gk.eval_float(k, l), Gl.eval_float(k, l)]])
        try:
            d = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return None
        k, l = k + d[0], l + d[1]
        if abs(d[0]) + abs(d[1]) < 1e-15 * (1 + abs(k) + abs(l)):
            break
    if not np.isfinite(k) or not np.isfinite(l):
        return None
    return k, l


def _solution(k: float, l: float, gamma4, tol: float, arc: Optional[str] = None, resolved: bool = True) -> KiteSolution:
    g = float(gamma4)
    fr = abs(f(k, l))
    try:
        gr = abs(gamma4_of(k, l) - g)
    except PoleError:
        gr = float("inf")
    cert = certify(kite_configuration(k, l, gamma4), tol)
    ok = resolved and fr < tol and gr < tol * (1 + abs(g))
    return KiteSolution(k, l, g, classify(k, l), arc or arc_of(k, l), cert, ok, fr, gr)


def _is_barycenter(k, l):
    return abs(k - BARYCENTER[0]) < 1e-6 and abs(l - BARYCENTER[1]) < 1e-6


def barycenter_solution(gamma4, tol: float = 1e-10) -> KiteSolution:
    k, l = BARYCENTER
    cert = certify(kite_configuration(k, l, gamma4), tol)
    return KiteSolution(k, l, float(gamma4), "equilateral-barycenter", "P6", cert, True, abs(f(k, l)), 0.0)


def _phi_parts(k: float, l: float, g: float):
    num, den = gamma4_numerator(k, l), gamma4_denominator(k, l)
    return num, den, (num / den - g) if den != 0 else math.nan


def _point_on(p, q, t):
    c = _correct(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
    return c if c is not None else (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _bisect(p, q, g: float, iters: int = 60):
    """Root of G - g on the curve between samples p and q (sign change assumed)."""
    sa = _phi_parts(*p, g)[2] > 0
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        m = (lo + hi) / 2
        v = _phi_parts(*_point_on(p, q, m), g)[2]
        if v == 0:
            return _point_on(p, q, m)
        if (v > 0) == sa:
            lo = m
        else:
            hi = m
    return _point_on(p, q, (lo + hi) / 2)


def _extremum(a, b, c, g: float, sign: int, iters: int = 80):
    """Golden-section search for the extremum of sign*(G - g) on the polyline a-b-c."""
    def at(s):
        pt = _point_on(a, b, s) if s <= 1 else _point_on(b, c, s - 1)
        return pt, sign * _phi_parts(*pt, g)[2]

    lo, hi = 0.0, 2.0
    r = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - r * (hi - lo), lo + r * (hi - lo)
    f1, f2 = at(x1)[1], at(x2)[1]
    for _ in range(iters):
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - r * (hi - lo)
            f1 = at(x1)[1]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + r * (hi - lo)
            f2 = at(x2)[1]
    sm = (lo + hi) / 2
    pt, v = at(sm)
    return sm, pt, sign * v


def _split(a, b, c, s):
    """Polyline a-b-c cut at parameter s into two (p, q) chords."""
    m = _point_on(a, b, s) if s <= 1 else _point_on(b, c, s - 1)
    return (a, m), (m, c)


def solve_kite(gamma4, eps: float = 1e-12, tol: float = 1e-10, bound: float = 1e3,
               include_barycenter: bool = True) -> list[KiteSolution]:
    """All kite solutions with k + l > 0, found by scanning G - gamma4 along the traced arcs.

    Sign changes between samples are bisected on the curve and polished by
    2-D Newton; local extrema of G between samples are searched so that
    near-tangent pairs of roots (and exact tangencies) are not skipped.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    g = float(gamma4)
    if g == 0:
        return solve_kite_gamma4_zero(eps, tol, include_barycenter)
    found: list[KiteSolution] = []
    crit = [c for c in critical_points() if abs(c.gamma4 - g) < 1e-9 * (1 + abs(g))]

    def add(sol):
        for s in found:
            if abs(s.k - sol.k) < DUPLICATE_TOL and abs(s.l - sol.l) < DUPLICATE_TOL:
                return
        found.append(sol)

    def accept(k0, l0):
        for c in crit:
            if abs(c.k - k0) < 1e-4 and abs(c.l - l0) < 1e-4:
                add(_solution(c.k, c.l, gamma4, tol))
                return
        r = _newton2(gamma4, k0, l0)
        if r is not None and math.hypot(r[0] - k0, r[1] - l0) < 1e-6 * (1 + abs(k0) + abs(l0)):
            k0, l0 = r
        if not k0 + l0 > 0 or abs(k0) < 1e-12 or abs(l0) < 1e-12 or _is_barycenter(k0, l0):
            return
        sol = _solution(k0, l0, gamma4, tol)
        add(sol)

    for br in branches(bound):
        pts = br.samples
        vals = [_phi_parts(k, l, g) for k, l in pts]
        usable = [not math.isnan(v[2]) for v in vals]

        def pole_between(i):
            (na, da, _), (nb, db, _) = vals[i], vals[i + 1]
            return (da > 0) != (db > 0) and (na > 0) == (nb > 0)

        for i in range(len(pts) - 1):
            if not (usable[i] and usable[i + 1]) or pole_between(i):
                continue
            pa, pb = vals[i][2], vals[i + 1][2]
            if pa == 0:
                accept(*pts[i])
            elif (pa > 0) != (pb > 0) and pb != 0:
                accept(*_bisect(pts[i], pts[i + 1], g))
        for i in range(1, len(pts) - 1):
            if not all(usable[i - 1:i + 2]) or pole_between(i - 1) or pole_between(i):
                continue
            pa, pb, pc = vals[i - 1][2], vals[i][2], vals[i + 1][2]
            if (pb - pa) * (pc - pb) >= 0:
                continue
            sign = 1 if pb > pa else -1
            s_ext, pt, v = _extremum(pts[i - 1], pts[i], pts[i + 1], g, sign)
            if abs(v) < 1e-9 * (1 + abs(g)):
                accept(*pt)
            elif (v > 0) != (pa > 0) and (v > 0) != (pc > 0):
                (p1, q1), (p2, q2) = _split(pts[i - 1], pts[i], pts[i + 1], s_ext)
                accept(*_bisect(p1, q1, g))
                accept(*_bisect(p2, q2, g))
    found.sort(key=lambda s: (s.arc, s.k, s.l))
    if include_barycenter:
        found.append(barycenter_solution(gamma4, tol))
    return found


def solve_kite_gamma4_zero(eps: float = 1e-12, tol: float = 1e-10, include_barycenter: bool = True) -> list[KiteSolution]:
    """With G = 0 the equations force k^2 = 3; the remaining condition is f(+-sqrt3, l) = 0."""
    out = []
    for k, l in _sqrt3_roots(Fraction(1, 10**30)):
        if _is_barycenter(k, l):
            if include_barycenter:
                out.append(barycenter_solution(0, tol))
            continue
        cert = certify(kite_configuration(k, l, 0), tol)
        out.append(KiteSolution(k, l, 0.0, classify(k, l), arc_of(k, l), cert, True, abs(f(k, l)), 0.0))
    out.sort(key=lambda s: (s.cls == "equilateral-barycenter", s.arc, s.k, s.l))
    return out


def concave_beyond_barycenter(solutions) -> list[KiteSolution]:
    return [s for s in solutions if s.cls in ("concave-exterior", "concave-interior")]


# ---------------------------------------------------------------------------
# exact oracle


def exact_solution_count(gamma4, bound: float = 1e3) -> int:
    """Number of kite solutions (barycenter excluded) from Res_k(F, N - G D).

    Each real root l0 is refined exactly; partners k are the real roots of
    F(., l0) that reproduce gamma4 and satisfy the chart constraints.
    Common zeros of N and D are base points of the pencil, not solutions, and
    are rejected by the gamma4 check. Partners with |k| or |l| above `bound`
    belong to the tails and are dropped, matching solve_kite.
    """
    g = Fraction(gamma4)
    G = gamma_relation(g)
    R = resultant(F_CLEARED, G, eliminate="x")
    R = nonzero_part(R, 0)
    pts = []
    for iv in isolate_roots(R):
        l0 = float(refine_root(R, iv, Fraction(1, 10**40)).midpoint)
        cs = [p.eval_float(l0) for p in reversed(F_CLEARED.coefficients_in("x"))]
        for kr in np.roots(cs):
            if abs(kr.imag) > 1e-7 * (1 + abs(kr)):
                continue
            k0 = float(kr.real)
            if max(abs(k0), abs(l0)) > bound:
                continue
            if not k0 + l0 > 0 or abs(k0) < 1e-12 or _is_barycenter(k0, l0):
                continue
            den = gamma4_denominator(k0, l0)
            if abs(den) < 1e-12:
                continue
            if abs(gamma4_numerator(k0, l0) / den - float(g)) > 1e-6 * (1 + abs(float(g))):
                continue
            if not any(abs(k0 - a) < 1e-7 and abs(l0 - b) < 1e-7 for a, b in pts):
                pts.append((k0, l0))
    return len(pts)


# ---------------------------------------------------------------------------
# Lagrange critical points of G on f = 0


def _f_numerator_denominator():
    """f = Nf / Df as polynomials."""
    Df = 4 * (1 + _K**2) * (1 + _L**2) * (_K + _L)
    Nf = 2 * F_CLEARED
    return Nf, Df


@lru_cache(maxsize=1)
def lagrange_numerator() -> BivariatePolynomial:
    """Numerator of dG/dk df/dl - dG/dl df/dk, both factors kept as rational functions."""
    Nf, Df = _f_numerator_denominator()
    N, D = N_POLY, D_POLY
    gk = N.derivative("x") * D - N * D.derivative("x")
    gl = N.derivative("y") * D - N * D.derivative("y")
    fk = Nf.derivative("x") * Df - Nf * Df.derivative("x")
    fl = Nf.derivative("y") * Df - Nf * Df.derivative("y")
    return gk * fl - gl * fk


@lru_cache(maxsize=1)
def h1_cofactor() -> BivariatePolynomial:
    """lagrange_numerator / h1; raises if the printed h1 is not an exact factor."""
    from .ratpoly import PolynomialDomainError
    try:
        return lagrange_numerator().exact_div(H1_PRINTED)
    except PolynomialDomainError as exc:
        raise TranscriptionFailure("printed h1 does not divide the Lagrange numerator") from exc


@lru_cache(maxsize=1)
def critical_resultant() -> RationalPolynomial:
    """Res_k(h1, F) in l."""
    return resultant(H1_PRINTED, F_CLEARED, eliminate="x")


def expected_critical_resultant() -> RationalPolynomial:
    l = RationalPolynomial([0, 1])
    return 6144 * l * (l * l - 3) * (l * l + 1) ** 12 * (3 * l * l - 1) ** 2 * R_PRINTED


def check_critical_factorization() -> bool:
    return critical_resultant() == expected_critical_resultant()


@dataclass(frozen=True)
class CriticalPoint:
    k: float
    l: float
    gamma4: float
    multiplier: float
    arc: str
    second_difference: float

    @property
    def kind(self) -> str:
        return "maximum" if self.second_difference < 0 else "minimum"


def _gamma_along_curve(k: float, l: float, h: float):
    """G at arclength offsets -h, 0, +h along f = 0 through (k, l)."""
    tk, tl = _tangent(k, l)
    vals = []
    for s in (-h, 0.0, h):
        c = _correct(k + s * tk, l + s * tl)
        vals.append(gamma4_of(*c))
    return vals


def _newton_fh(k: float, l: float, iters: int = 40):
    H = H1_PRINTED
    Hk, Hl = H.derivative("x"), H.derivative("y")
    for _ in range(iters):
        F = np.array([F_CLEARED.eval_float(k, l), H.eval_float(k, l)])
        J = np.array([[_GK.eval_float(k, l), _GL.eval_float(k, l)], [Hk.eval_float(k, l), Hl.eval_float(k, l)]])
        d = np.linalg.solve(J, -F)
        k, l = k + d[0], l + d[1]
        if abs(d[0]) + abs(d[1]) < 1e-16 * (1 + abs(k) + abs(l)):
            break
    return float(k), float(l)


@lru_cache(maxsize=4)
def critical_points(h: float = 1e-4) -> tuple[CriticalPoint, ...]:
    """Critical points of G restricted to the arcs, from the real roots of Res_k(h1, F)."""
    h1_cofactor()
    R = critical_resultant()
    if not check_critical_factorization():
        raise TranscriptionFailure("Res_k(h1, F) does not factor as printed")
    out = []
    for iv in isolate_roots(R):
        l0 = float(refine_root(R, iv, Fraction(1, 10**30)).midpoint)
        if abs(l0) < 1e-12:
            continue
        cs = [p.eval_float(l0) for p in reversed(F_CLEARED.coefficients_in("x"))]
        for kr in np.roots(cs):
            if abs(kr.imag) > 1e-7:
                continue
            k0 = float(kr.real)
            if not k0 + l0 > 0 or abs(H1_PRINTED.eval_float(k0, l0)) > 1e-6 * (1 + abs(k0)) ** 9 * (1 + abs(l0)) ** 7:
                continue
            try:
                k0, l0 = _newton_fh(k0, l0)
            except np.linalg.LinAlgError:
                continue
            try:
                gm, g0, gp = _gamma_along_curve(k0, l0, h)
            except (PoleError, TypeError):
                continue
            slope = (gp - gm) / (2 * h)
            if abs(slope) > 1e-6:
                # removable point of G (numerator and denominator vanish together): not critical
                continue
            gk, gl = _GK.eval_float(k0, l0), _GL.eval_float(k0, l0)
            eps = 1e-7
            dgk = (gamma4_of(k0 + eps, l0) - gamma4_of(k0 - eps, l0)) / (2 * eps)
            mult = -dgk / gk if gk else -((gamma4_of(k0, l0 + eps) - gamma4_of(k0, l0 - eps)) / (2 * eps)) / gl
            out.append(CriticalPoint(k0, l0, g0, mult, arc_of(k0, l0), (gp - 2 * g0 + gm) / h**2))
    return tuple(out)


# ---------------------------------------------------------------------------
# plotting data


def curve_samples(bound: float = 3.0, step: float = 1e-2, bounds=None) -> list[dict]:
    """Samples of f = 0 and of the pole curve l = (1 - k^2) / (2k) inside the
    square window [lo, hi]^2 (default [-bound, bound]^2)."""
    lo, hi = (-bound, bound) if bounds is None else (float(bounds[0]), float(bounds[1]))
    if not lo < hi:
        raise ValueError("empty window")
    rows = []
    rect = (lo, hi, lo, hi)
    seeds = [(1.0, 1.0), (landmark("P5").k, landmark("P5").l)]
    for name, seed in zip(("upper", "lower"), seeds):
        if not (lo <= seed[0] <= hi and lo <= seed[1] <= hi):
            continue
        arc = trace_curve(seed, step=step, bounds=rect, arc_id=name)
        for k, l in arc.samples:
            rows.append({"curve": f"f-zero-{name}", "k": float(k), "l": float(l),
                         "arc": arc_of(k, l) if abs(k) > 1e-12 else "P4"})
    for k in np.linspace(lo, hi, 801):
        k = float(k)
        if abs(k) < 1e-3:
            continue
        l = pole_curve(k)
        if lo <= l <= hi and k + l > 0:
            rows.append({"curve": "pole", "k": k, "l": float(l), "arc": ""})
    return rows
