"""Exact univariate and bivariate polynomial algebra over the rationals.

Everything here runs on :class:`fractions.Fraction`; nothing in a certified
path touches floating point.  The univariate side provides Sturm chains,
distinct-root counting on (possibly unbounded) half-open intervals,
constructive root isolation and bisection refinement.  The bivariate side is
deliberately small: enough ring arithmetic to build the vortex systems and a
Sylvester resultant computed by evaluation at integer nodes and Newton
interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class PolynomialDomainError(ValueError):
    """Raised when an operation receives a polynomial outside its domain."""


class IsolationError(ArithmeticError):
    """Raised when an interval does not isolate a root of the square-free part."""


class Infinity:
    """Tagged infinite endpoint.  Use the module constants ``POS_INF``/``NEG_INF``."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = 1 if sign > 0 else -1

    def __neg__(self) -> "Infinity":
        return NEG_INF if self.sign > 0 else POS_INF

    def __repr__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = Infinity(1)
NEG_INF = Infinity(-1)

Endpoint = Union[int, Fraction, Infinity]


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def _lt(a: Endpoint, b: Endpoint) -> bool:
    if isinstance(a, Infinity):
        return a.sign < 0 and not (isinstance(b, Infinity) and b.sign < 0)
    if isinstance(b, Infinity):
        return b.sign > 0
    return a < b


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


class RationalPolynomial:
    """Dense polynomial with ``Fraction`` coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    Instances are immutable; the Sturm chain and square-free part are cached.
    """

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers -------------------------------------------------
    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "RationalPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_q(r), 1])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "RationalPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "RationalPolynomial(" + " + ".join(terms) + ")"

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = RationalPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        if self.degree < dq:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        for shift in range(self.degree - dq, -1, -1):
            c = rem[shift + dq] / lc
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "RationalPolynomial") -> "RationalPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise PolynomialDomainError("division is not exact")
        return q

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lc = self.lc
        return RationalPolynomial(c / lc for c in self.coeffs)

    def primitive_integer(self) -> tuple[Fraction, list[int]]:
        """Return ``(scale, ints)`` with ``self == scale * ints`` and integer ``ints``."""
        if self.is_zero():
            return Fraction(1), []
        den = lcm(*(c.denominator for c in self.coeffs))
        return Fraction(1, den), [int(c * den) for c in self.coeffs]

    # evaluation -----------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def sign_at(self, x: Endpoint) -> int:
        if self.is_zero():
            return 0
        if isinstance(x, Infinity):
            s = _sign(self.lc)
            if x.sign < 0 and self.degree % 2:
                s = -s
            return s
        return _sign(self(_q(x)))

    # structure ------------------------------------------------------------
    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    @cached_property
    def squarefree_part(self) -> "RationalPolynomial":
        if self.is_zero():
            raise PolynomialDomainError("zero polynomial has no square-free part")
        if self.degree <= 0:
            return RationalPolynomial([1])
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    @cached_property
    def _sturm(self) -> tuple["RationalPolynomial", ...]:
        if self.is_zero():
            raise PolynomialDomainError("Sturm chain of the zero polynomial")
        chain = [self]
        if self.degree >= 1:
            chain.append(self.derivative())
            while True:
                r = chain[-2] % chain[-1]
                if r.is_zero():
                    break
                chain.append(-r)
        return tuple(chain)

    def sturm_variations(self, x: Endpoint) -> int:
        signs = [s for s in (p.sign_at(x) for p in self._sturm) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def squarefree_factorization(self) -> list[tuple["RationalPolynomial", int]]:
        """Yun's algorithm; returns monic square-free factors with multiplicities."""
        if self.is_zero():
            raise PolynomialDomainError("zero polynomial")
        out: list[tuple[RationalPolynomial, int]] = []
        f = self.monic()
        if f.degree <= 0:
            return out
        fp = f.derivative()
        a = f.gcd(fp)
        b = f.exact_div(a)
        c = fp.exact_div(a) if not a.is_zero() else fp
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if a.degree > 0:
                out.append((a, i))
            i += 1
        return out

    def __getstate__(self):
        return {"coeffs": self.coeffs}

    def __setstate__(self, state):
        self.coeffs = state["coeffs"]


def as_polynomial(p) -> RationalPolynomial:
    if isinstance(p, RationalPolynomial):
        return p
    return RationalPolynomial(p)


# ---------------------------------------------------------------------------
# Sturm machinery


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Canonical Sturm chain ``p, p', -rem(p_{i-1}, p_i), ...``.

    >>> [q.coeffs for q in sturm_sequence(RationalPolynomial([-2, 0, 1]))]
    [(Fraction(-2, 1), Fraction(0, 1), Fraction(1, 1)), (Fraction(0, 1), Fraction(2, 1)), (Fraction(2, 1),)]
    """
    p = as_polynomial(p)
    if p.is_zero():
        raise PolynomialDomainError("Sturm chain of the zero polynomial")
    return list(p._sturm)


def count_real_roots(p: RationalPolynomial, lo: Endpoint = NEG_INF, hi: Endpoint = POS_INF) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    p = as_polynomial(p)
    if p.is_zero():
        raise PolynomialDomainError("root count of the zero polynomial")
    if not _lt(lo, hi):
        raise ValueError("need lo < hi")
    if p.degree <= 0:
        return 0
    return p.sturm_variations(lo) - p.sturm_variations(hi)


def sign_variations(coeffs: Sequence[Number]) -> int:
    signs = [_sign(_q(c)) for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open interval ``(lo, hi]`` holding exactly one root of the square-free part."""

    lo: Fraction
    hi: Fraction
    multiplicity_hint: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("IsolatingInterval needs lo < hi")
        if self.multiplicity_hint < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def overlaps(self, other: "IsolatingInterval") -> bool:
        return self.lo < other.hi and other.lo < self.hi


def _multiplicity(p: RationalPolynomial, lo: Fraction, hi: Fraction) -> int:
    m = 1
    g = p.gcd(p.derivative())
    while g.degree > 0 and count_real_roots(g, lo, hi) > 0:
        m += 1
        g = g.gcd(g.derivative())
    return m


def _nonroot_split(q: RationalPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    """Split point strictly inside (lo, hi) that is not a root of ``q``."""
    mid = (lo + hi) / 2
    step = (hi - lo) / 8
    k = 1
    while q(mid) == 0:
        mid = (lo + hi) / 2 + step / k * (1 if k % 2 else -1)
        k += 1
    return mid


def isolate_roots(p: RationalPolynomial) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per distinct real root, in increasing order."""
    p = as_polynomial(p)
    if p.is_zero():
        raise PolynomialDomainError("cannot isolate roots of the zero polynomial")
    if p.degree <= 0:
        return []
    q = p.squarefree_part
    bound = cauchy_bound(q)
    lo, hi = -bound, bound
    while q(lo) == 0:
        lo -= 1
    while q(hi) == 0:
        hi += 1
    out: list[IsolatingInterval] = []
    stack = [(lo, hi, count_real_roots(q, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(a, b, _multiplicity(p, a, b)))
            continue
        m = _nonroot_split(q, a, b)
        left = count_real_roots(q, a, m)
        stack.append((m, b, n - left))
        stack.append((a, m, left))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine_root(p: RationalPolynomial, iv: IsolatingInterval, eps: Number) -> IsolatingInterval:
    """Bisect ``iv`` until its width is below ``eps``; every step is an exact sign test."""
    p = as_polynomial(p)
    eps = _q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    q = p.squarefree_part
    lo, hi = _q(iv.lo), _q(iv.hi)
    slo, shi = q.sign_at(lo), q.sign_at(hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise IsolationError(f"({lo}, {hi}] does not bracket a sign change of the square-free part")
    while hi - lo >= eps:
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            # exact rational root: shrink symmetrically around it
            delta = min(eps / 4, (hi - lo) / 4)
            while q.sign_at(mid - delta) == 0 or q.sign_at(mid + delta) == 0 or count_real_roots(q, mid - delta, mid + delta) != 1:
                delta /= 2
            lo, hi = mid - delta, mid + delta
            break
        if s == slo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, iv.multiplicity_hint)


def real_roots(p: RationalPolynomial, eps: Number = Fraction(1, 10**12)) -> list[IsolatingInterval]:
    return [refine_root(p, iv, eps) for iv in isolate_roots(p)]


def nonzero_part(p: RationalPolynomial, *roots: Number) -> RationalPolynomial:
    """Divide out every factor ``(x - r)`` for the given rational roots."""
    p = as_polynomial(p)
    for r in roots:
        lin = RationalPolynomial([-_q(r), 1])
        while not p.is_zero() and p(_q(r)) == 0:
            p = p.exact_div(lin)
    return p


# ---------------------------------------------------------------------------
# Bivariate polynomials


VARS = ("x", "y")


def _var_index(var) -> int:
    if var in (0, 1):
        return var
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; use 'x' or 'y'") from None


class BivariatePolynomial:
    """Sparse polynomial in two variables ``x``, ``y`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Number] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            c = _q(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def var(cls, name) -> "BivariatePolynomial":
        return cls({(1, 0): 1} if _var_index(name) == 0 else {(0, 1): 1})

    @classmethod
    def const(cls, c: Number) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def from_univariate(cls, p: RationalPolynomial, var="x") -> "BivariatePolynomial":
        idx = _var_index(var)
        return cls({((i, 0) if idx == 0 else (0, i)): c for i, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var) -> int:
        idx = _var_index(var)
        if not self.terms:
            return -1
        return max(e[idx] for e in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"BivariatePolynomial({body or '0'})"

    def _coerce(self, other):
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariatePolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                e = (i + k, j + l)
                out[e] = out.get(e, 0) + a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BivariatePolynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, var) -> "BivariatePolynomial":
        idx = _var_index(var)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[idx]
            if e:
                out[(i - 1, j) if idx == 0 else (i, j - 1)] = c * e
        return BivariatePolynomial(out)

    def coefficients_in(self, var) -> list[RationalPolynomial]:
        """Coefficients w.r.t. ``var`` (ascending), each a polynomial in the other variable."""
        idx = _var_index(var)
        n = self.degree(var)
        buckets: list[dict[int, Fraction]] = [dict() for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            e, o = ((i, j) if idx == 0 else (j, i))
            buckets[e][o] = c
        out = []
        for b in buckets:
            deg = max(b, default=-1)
            out.append(RationalPolynomial([b.get(k, 0) for k in range(deg + 1)]))
        return out

    def substitute(self, var, value) -> RationalPolynomial:
        """Fix ``var`` at an exact value; returns a polynomial in the other variable."""
        idx = _var_index(var)
        v = _q(value)
        other = 1 - idx
        out: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            out[e[other]] = out.get(e[other], 0) + c * v ** e[idx]
        deg = max(out, default=-1)
        return RationalPolynomial([out.get(k, 0) for k in range(deg + 1)])

    def exact_div(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        """Quotient by ``other``; raises PolynomialDomainError when not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        d = other.degree("x")
        lc = other.coefficients_in("x")[-1]
        rem = self
        quot = BivariatePolynomial()
        while not rem.is_zero():
            n = rem.degree("x")
            if n < d:
                raise PolynomialDomainError("division is not exact")
            c = rem.coefficients_in("x")[-1].exact_div(lc)
            term = BivariatePolynomial({(n - d, j): v for j, v in enumerate(c.coeffs)})
            quot = quot + term
            rem = rem - term * other
        return quot

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.terms.items())

    def eval_float(self, x: float, y: float) -> float:
        return sum(float(c) * x**i * y**j for (i, j), c in self.terms.items())


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix from ascending coefficient lists of formal degree len-1."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    fr, gr = list(reversed(f)), list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def univariate_resultant(f: RationalPolynomial, g: RationalPolynomial) -> Fraction:
    if f.degree < 1 or g.degree < 1:
        raise PolynomialDomainError("resultant needs positive degrees")
    sf, fi = f.primitive_integer()
    sg, gi = g.primitive_integer()
    det = _bareiss_det(sylvester_matrix(fi, gi))
    return Fraction(det) * sf ** g.degree * sg ** f.degree


def _newton_interpolate(nodes: Sequence[int], values: Sequence[Fraction]) -> RationalPolynomial:
    n = len(nodes)
    coef = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    p = RationalPolynomial([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * RationalPolynomial([-nodes[i], 1]) + coef[i]
    return p


def resultant(f: BivariatePolynomial, g: BivariatePolynomial, eliminate="x") -> RationalPolynomial:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``eliminate``.

    The determinant is evaluated exactly at integer nodes of the remaining
    variable (formal degrees are kept, so specialisation commutes with the
    determinant) and the result is recovered by Newton interpolation.
    """
    idx = _var_index(eliminate)
    m, n = f.degree(idx), g.degree(idx)
    if m < 1 or n < 1:
        raise PolynomialDomainError("both polynomials need positive degree in the eliminated variable")
    other = 1 - idx
    bound = m * g.degree(other) + n * f.degree(other)
    fc = f.coefficients_in(idx)
    gc = g.coefficients_in(idx)
    den_f = lcm(*(c.denominator for p in fc for c in p.coeffs))
    den_g = lcm(*(c.denominator for p in gc for c in p.coeffs))
    fc = [p * den_f for p in fc]
    gc = [p * den_g for p in gc]
    nodes = list(range(-(bound // 2), bound - bound // 2 + 1))
    values = []
    for t in nodes:
        fi = [int(p(t)) for p in fc]
        gi = [int(p(t)) for p in gc]
        values.append(Fraction(_bareiss_det(sylvester_matrix(fi, gi))))
    res = _newton_interpolate(nodes, values)
    scale = Fraction(1, den_f ** n * den_g ** m)
    return res * scale
