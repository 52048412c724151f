"""Collinear relative equilibria with x3 = -1, x4 = 1 and strengths (1, 1, 1, G).

On the real line the equilibrium equations read

    lam (x_i - c) = sum_{j != i} G_j / (x_i - x_j),

where ``lam`` is the counter-clockwise rotation rate.  Subtracting the equations
for vortices 3 and 4 gives ``2 lam = R4 - R3`` and, for i = 1, 2,
``(R4 - R3)(x_i - 1) = 2 (R_i - R4)`` with ``R_i`` the right-hand sides.
Clearing denominators leaves two polynomials A(x1, x2), B(x1, x2); their
resultant in x1 is, up to powers of (x2 - 1)(x2 + 1), the degree-12
polynomial ``p(x2)`` whose real roots enumerate the solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .ratpoly import (
    BivariatePolynomial,
    IsolatingInterval,
    RationalPolynomial,
    count_real_roots,
    isolate_roots,
    nonzero_part,
    refine_root,
    resultant,
)
from .vortexcore import EquilibriumCertificate, PlanarConfiguration, certify

# coefficient of x2^n in p, as a polynomial in G (ascending powers G^0..G^5)
PRINTED_P_COEFFS = {
    12: (4, 20, 37, 32, 13, 2),
    11: (12, 38, 20, -30, -32, -8),
    10: (-312, -1250, -1836, -1204, -338, -28),
    9: (-740, -1346, 100, 1234, 664, 88),
    8: (7020, 23290, 26937, 13688, 3007, 254),
    7: (8712, 8492, -5640, -8636, -2656, -272),
    6: (62688, 156484, 145312, -62936, -14092, 1288),
    5: (-5112, 6476, 9528, -6092, -4144, -656),
    4: (166860, 334552, 261207, 114080, 24859, 2078),
    3: (-112340, -93138, 78260, 91162, 32192, 3864),
    2: (9048, -49626, -66484, 2348, 13886, 2916),
    1: (7068, 9846, -6492, -12102, 600, 1080),
    0: (-1148, 1050, 1227, -472, -711, 162),
}

# the x2^6 coefficient as produced by eliminating the equilibrium equations
P_COEFFS = dict(PRINTED_P_COEFFS)
P_COEFFS[6] = (-62688, -156484, -145312, -62936, -14092, -1288)


class TranscriptionError(RuntimeError):
    """The stored eliminant disagrees with an independent elimination."""


class DegenerateChartError(ArithmeticError):
    pass


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def p_bivariate(printed: bool = False) -> BivariatePolynomial:
    """p as a polynomial in x = x2 and y = G."""
    table = PRINTED_P_COEFFS if printed else P_COEFFS
    return BivariatePolynomial({(n, k): c for n, cs in table.items() for k, c in enumerate(cs)})


def leading_coefficient(printed: bool = False) -> RationalPolynomial:
    table = PRINTED_P_COEFFS if printed else P_COEFFS
    return RationalPolynomial(table[12])


def asymmetric_polynomial(gamma4, printed: bool = False) -> RationalPolynomial:
    """p(x2) at the given strength; ``printed=True`` uses the uncorrected reference table."""
    g = _q(gamma4)
    table = PRINTED_P_COEFFS if printed else P_COEFFS
    return RationalPolynomial([RationalPolynomial(table[n])(g) for n in range(13)])


# ---------------------------------------------------------------------------
# the cleared equilibrium system


def _divide_linear_x(f: BivariatePolynomial, c: RationalPolynomial) -> Optional[BivariatePolynomial]:
    """Exact quotient f / (x - c(y)), or None."""
    coeffs = f.coefficients_in("x")
    n = len(coeffs) - 1
    if n < 1:
        return None
    quot = [RationalPolynomial()] * n
    acc = RationalPolynomial()
    for k in range(n, 0, -1):
        acc = coeffs[k] + acc * c
        quot[k - 1] = acc
    if not (coeffs[0] + acc * c).is_zero():
        return None
    terms = {}
    for i, q in enumerate(quot):
        for j, v in enumerate(q.coeffs):
            if v:
                terms[(i, j)] = v
    return BivariatePolynomial(terms)


def _divide_y(f: BivariatePolynomial, lin: RationalPolynomial) -> Optional[BivariatePolynomial]:
    terms = {}
    for i, q in enumerate(f.coefficients_in("x")):
        if q.is_zero():
            continue
        d, r = divmod(q, lin)
        if not r.is_zero():
            return None
        for j, v in enumerate(d.coeffs):
            if v:
                terms[(i, j)] = v
    return BivariatePolynomial(terms)


def _strip_collision_factors(f: BivariatePolynomial) -> BivariatePolynomial:
    y = RationalPolynomial([0, 1])
    x_factors = [RationalPolynomial([1]), RationalPolynomial([-1]), y]
    y_factors = [RationalPolynomial([-1, 1]), RationalPolynomial([1, 1])]
    changed = True
    while changed:
        changed = False
        for c in x_factors:
            q = _divide_linear_x(f, c)
            if q is not None:
                f, changed = q, True
        for lin in y_factors:
            q = _divide_y(f, lin)
            if q is not None:
                f, changed = q, True
    return f


@lru_cache(maxsize=64)
def cleared_system(gamma4) -> tuple[BivariatePolynomial, BivariatePolynomial]:
    """(A, B) in x = x1, y = x2 with every collision factor divided out."""
    g = _q(gamma4)
    X = BivariatePolynomial.var("x")
    Y = BivariatePolynomial.var("y")
    pos = [X, Y, BivariatePolynomial.const(-1), BivariatePolynomial.const(1)]
    gam = [1, 1, 1, g]
    diff = {(i, j): pos[i] - pos[j] for i in range(4) for j in range(4) if i != j}
    # D * R_i, with D the product of the six differences x_a - x_b (a < b)
    DR = []
    for i in range(4):
        acc = BivariatePolynomial()
        for j in range(4):
            if j == i:
                continue
            term = BivariatePolynomial.const(gam[j])
            for a in range(4):
                for b in range(a + 1, 4):
                    if {a, b} != {i, j}:
                        term = term * diff[(a, b)]
            if i > j:
                term = -term
            acc = acc + term
        DR.append(acc)
    lam2 = DR[3] - DR[2]
    A = lam2 * (X - 1) - (DR[0] - DR[3]) * 2
    B = lam2 * (Y - 1) - (DR[1] - DR[3]) * 2
    return _strip_collision_factors(A), _strip_collision_factors(B)


def _on_diagonal(f: BivariatePolynomial, sign: int) -> RationalPolynomial:
    """f(sign*y, y) as a polynomial in y."""
    out: dict[int, Fraction] = {}
    for (i, j), c in f.terms.items():
        out[i + j] = out.get(i + j, 0) + c * sign**i
    deg = max(out, default=-1)
    return RationalPolynomial([out.get(k, 0) for k in range(deg + 1)])


def symmetric_polynomial(gamma4) -> RationalPolynomial:
    """Polynomial in x2 whose roots are the symmetric solutions x1 = -x2."""
    A, B = cleared_system(_q(gamma4))
    g = _on_diagonal(A, -1).gcd(_on_diagonal(B, -1))
    return nonzero_part(g, 1, -1, 0)


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class CollinearSolution:
    x1: float
    x2: float
    lam: float
    c: float
    symmetric: bool
    gamma4: Fraction
    certificate: Optional[EquilibriumCertificate] = None
    x2_interval: Optional[IsolatingInterval] = None

    @property
    def positions(self) -> tuple:
        return ((self.x1, 0.0), (self.x2, 0.0), (-1.0, 0.0), (1.0, 0.0))

    def configuration(self) -> PlanarConfiguration:
        return PlanarConfiguration(self.positions, (1, 1, 1, self.gamma4))

    def to_json(self) -> dict:
        out = {
            "gamma4": str(self.gamma4),
            "x1": float(self.x1),
            "x2": float(self.x2),
            "lambda": float(self.lam),
            "c": float(self.c),
            "symmetric": bool(self.symmetric),
        }
        if self.x2_interval is not None:
            out["x2_interval"] = [str(self.x2_interval.lo), str(self.x2_interval.hi)]
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass(frozen=True)
class CollinearCensus:
    """``root_count`` is the Sturm count of real roots of p off x2 = +-1;
    ``escaped_count`` of them have no finite partner x1 (both leading
    coefficients in x1 vanish), so ``solution_count`` is the number of actual
    configurations."""

    gamma4: Fraction
    root_count: int
    symmetric_count: int
    degenerate_roots: tuple = field(default_factory=tuple)
    escaped_count: int = 0

    @property
    def solution_count(self) -> int:
        return self.root_count - self.escaped_count


def census(gamma4) -> CollinearCensus:
    """Exact Sturm count of the non-degenerate real roots of p(x2)."""
    g = _q(gamma4)
    p = asymmetric_polynomial(g)
    degenerate = tuple(r for r in (-1, 1) if p(Fraction(r)) == 0)
    core = nonzero_part(p, -1, 1)
    n = count_real_roots(core) if core.degree > 0 else 0
    sym = symmetric_polynomial(g)
    common = core.gcd(sym) if sym.degree > 0 and core.degree > 0 else RationalPolynomial([1])
    nsym = count_real_roots(common) if common.degree > 0 else 0
    A, B = cleared_system(g)
    lead = A.coefficients_in("x")[-1].gcd(B.coefficients_in("x")[-1])
    escaped = core.gcd(lead) if lead.degree > 0 and core.degree > 0 else RationalPolynomial([1])
    nesc = count_real_roots(escaped) if escaped.degree > 0 else 0
    return CollinearCensus(g, n, nsym, degenerate, nesc)


# ---------------------------------------------------------------------------
# solving


def equation_residual(x1: float, x2: float, lam: float, c: float, gamma4) -> float:
    """Max residual of the cleared equations lam (x_i - c) prod_j (x_i - x_j) = sum_j G_j prod_{k != j} (x_i - x_k)."""
    xs = [x1, x2, -1.0, 1.0]
    gs = [1.0, 1.0, 1.0, float(gamma4)]
    out = 0.0
    for i in range(4):
        others = [j for j in range(4) if j != i]
        prod = np.prod([xs[i] - xs[j] for j in others])
        rhs = sum(gs[j] * np.prod([xs[i] - xs[k] for k in others if k != j]) for j in others)
        out = max(out, abs(lam * (xs[i] - c) * prod - rhs))
    return float(out)


def _rates(x1: float, x2: float, gamma4: float) -> tuple[float, float]:
    xs = [x1, x2, -1.0, 1.0]
    gs = [1.0, 1.0, 1.0, gamma4]
    R = [sum(gs[j] / (xs[i] - xs[j]) for j in range(4) if j != i) for i in range(4)]
    lam = (R[3] - R[2]) / 2
    if lam == 0:
        raise DegenerateChartError("vanishing rotation rate: use the symmetric chart")
    c = 1.0 - R[3] / lam
    return lam, c


def _polish(A: BivariatePolynomial, B: BivariatePolynomial, x1: float, x2: float, steps: int = 30):
    Ax, Ay = A.derivative("x"), A.derivative("y")
    Bx, By = B.derivative("x"), B.derivative("y")
    for _ in range(steps):
        F = np.array([A.eval_float(x1, x2), B.eval_float(x1, x2)])
        J = np.array([[Ax.eval_float(x1, x2), Ay.eval_float(x1, x2)], [Bx.eval_float(x1, x2), By.eval_float(x1, x2)]])
        try:
            d = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        x1, x2 = x1 + d[0], x2 + d[1]
        if abs(d[0]) + abs(d[1]) < 1e-15 * (1 + abs(x1) + abs(x2)):
            break
    return x1, x2


def _x1_candidates(A, B, x2: float) -> list[float]:
    ca = np.roots([float(p.eval_float(x2)) for p in reversed(A.coefficients_in("x"))])
    cb = np.roots([float(p.eval_float(x2)) for p in reversed(B.coefficients_in("x"))])
    out = []
    for a in ca:
        if abs(a.imag) > 1e-6 * (1 + abs(a)):
            continue
        if len(cb) and min(abs(a - b) for b in cb) < 1e-5 * (1 + abs(a)):
            out.append(float(a.real))
    return out


def solve(gamma4, eps=Fraction(1, 10**12), tol: float = 1e-10) -> list[CollinearSolution]:
    """Every non-degenerate collinear solution, each certified through the velocity field."""
    g = _q(gamma4)
    A, B = cleared_system(g)
    core = nonzero_part(asymmetric_polynomial(g), -1, 1)
    out: list[CollinearSolution] = []
    if core.degree <= 0:
        return out
    for iv in isolate_roots(core):
        iv = refine_root(core, iv, eps)
        x2 = float(iv.midpoint)
        found = []
        for x1 in _x1_candidates(A, B, x2):
            p1, p2 = _polish(A, B, x1, x2)
            if abs(p2 - x2) > 1e-8 * (1 + abs(x2)):
                continue
            if min(abs(p1 - v) for v in (-1.0, 1.0, p2)) < 1e-9:
                continue
            if any(abs(p1 - f) < 1e-8 for f in found):
                continue
            found.append(p1)
            lam, c = _rates(p1, p2, float(g))
            cert = certify(PlanarConfiguration(((p1, 0.0), (p2, 0.0), (-1.0, 0.0), (1.0, 0.0)), (1, 1, 1, g)), tol)
            out.append(CollinearSolution(p1, p2, lam, c, abs(p1 + p2) < 1e-9, g, cert, iv))
    return out


def symmetric_solutions(gamma4, eps=Fraction(1, 10**14), tol: float = 1e-10) -> list[CollinearSolution]:
    g = _q(gamma4)
    sym = symmetric_polynomial(g)
    if sym.degree <= 0:
        return []
    out = []
    for iv in isolate_roots(sym):
        iv = refine_root(sym, iv, eps)
        x2 = float(iv.midpoint)
        lam, c = _rates(-x2, x2, float(g))
        cert = certify(PlanarConfiguration(((-x2, 0.0), (x2, 0.0), (-1.0, 0.0), (1.0, 0.0)), (1, 1, 1, g)), tol)
        out.append(CollinearSolution(-x2, x2, lam, c, True, g, cert, iv))
    return out


def symmetric_lambda(x2: float) -> float:
    """Rotation rate of the symmetric family as a function of x2 (c = 0)."""
    y = x2 * x2
    return (y - 5) / (2 * (y - 1))


# ---------------------------------------------------------------------------
# bifurcations


@lru_cache(maxsize=1)
def discriminant_in_gamma() -> RationalPolynomial:
    """Res_x(p, dp/dx) as a polynomial in G."""
    P = p_bivariate()
    return resultant(P, P.derivative("x"), eliminate="x")


@lru_cache(maxsize=1)
def bifurcation_polynomial() -> RationalPolynomial:
    """Vanishes wherever the non-degenerate root count can change: double roots,
    roots escaping to infinity, and roots crossing x2 = +-1."""
    P = p_bivariate()
    at_plus = P.substitute("x", 1)
    at_minus = P.substitute("x", -1)
    return (discriminant_in_gamma() * leading_coefficient() * at_plus * at_minus).squarefree_part


def bifurcation_values(lo, hi, grid: int = 16, width=Fraction(1, 10**6)) -> list[tuple[Fraction, Fraction]]:
    """Brackets (a, b) inside the open interval (lo, hi) across which the census changes."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    lo, hi, width = _q(lo), _q(hi), _q(width)
    pts = [lo + (hi - lo) * k / (grid + 1) for k in range(1, grid + 1)]
    counts = [census(t).root_count for t in pts]
    cert = bifurcation_polynomial()
    out = []
    for a, b, ca, cb in zip(pts, pts[1:], counts, counts[1:]):
        if ca == cb:
            continue
        while b - a > width:
            m = (a + b) / 2
            cm = census(m).root_count
            if cm != ca:
                b, cb = m, cm
            else:
                a = m
        if cert(a) != 0 or cert(b) != 0 or count_real_roots(cert, a, b) > 0:
            out.append((a, b))
        else:
            raise ArithmeticError(f"count change on ({a}, {b}] not certified by the discriminant")
    return out


# ---------------------------------------------------------------------------
# transcription firewall


@dataclass(frozen=True)
class CrosscheckEntry:
    gamma4: Fraction
    exact_match: bool
    intervals_overlap: bool
    eliminated_roots: tuple
    stored_roots: tuple

    @property
    def ok(self) -> bool:
        return self.exact_match and self.intervals_overlap


@dataclass(frozen=True)
class CrosscheckReport:
    entries: tuple
    printed: bool

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def eliminated_polynomial(gamma4) -> RationalPolynomial:
    """Res_{x1}(A, B) with the collision factors (x2 -+ 1) removed."""
    A, B = cleared_system(_q(gamma4))
    return nonzero_part(resultant(A, B, eliminate="x"), 1, -1)


def elimination_crosscheck(samples, printed: bool = False, width=Fraction(1, 10**10), strict: bool = True) -> CrosscheckReport:
    entries = []
    lc = leading_coefficient(printed)
    for s in samples:
        g = _q(s)
        if lc(g) == 0:
            raise ValueError(f"sample {g} is a root of the leading coefficient of p")
        ours = eliminated_polynomial(g)
        stored = nonzero_part(asymmetric_polynomial(g, printed), 1, -1)
        exact = ours.squarefree_part == stored.squarefree_part
        ri = [refine_root(ours, iv, width) for iv in isolate_roots(ours)]
        rs = [refine_root(stored, iv, width) for iv in isolate_roots(stored)]
        overlap = len(ri) == len(rs) and all(a.overlaps(b) for a, b in zip(ri, rs))
        entries.append(CrosscheckEntry(g, exact, overlap, tuple(float(v) for v in ri), tuple(float(v) for v in rs)))
    report = CrosscheckReport(tuple(entries), printed)
    if strict and not report.ok:
        bad = [str(e.gamma4) for e in entries if not e.ok]
        raise TranscriptionError(f"stored p(x2) disagrees with the elimination at G4 = {', '.join(bad)}")
    return report
