"""Tabulated distributions on Z_p and Volkenborn integration.

A distribution is tabulated to a finite depth N: ``mu(a, j)`` is the value
on the coset ``a + p^j Z_p`` for ``0 <= j <= N``.  Every limit in the theory
becomes a finite computation plus a reported Cauchy defect, the p-adic size
of the difference between the last two levels.

Values are ints, Fractions, :class:`PadicScalar` or :class:`CycloElement`;
mixed arithmetic coerces upward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclo_field import CycloElement, field
from .group_ring import GroupRingElement, as_element, element_from_json
from .padic_core import DEFAULT_PREC, PadicScalar, residual_of, size_of

# size comparisons are between exact powers of p stored as floats
_SLACK = 1 + 1e-9


def _binom(x, m):
    return math.comb(x, m) if x >= m else 0


def _zero_like(p):
    return PadicScalar.zero(p)


def _level_of(x):
    return x.ctx.n if isinstance(x, CycloElement) else None


# -- distributions ----------------------------------------------------------


@dataclass(frozen=True)
class TabulatedDistribution:
    p: int
    values: tuple

    def __post_init__(self):
        rows = []
        for j, row in enumerate(self.values):
            if len(row) != self.p**j:
                raise ValueError(f"level {j} needs {self.p**j} values, got {len(row)}")
            rows.append(tuple(as_element(x, self.p) for x in row))
        object.__setattr__(self, "values", tuple(rows))

    @property
    def depth(self):
        return len(self.values) - 1

    @property
    def level(self):
        """Ambient field level of the values, None for Q_p."""
        levels = [_level_of(x) for row in self.values for x in row]
        levels = [n for n in levels if n is not None]
        return max(levels) if levels else None

    def __call__(self, a, j):
        return self.values[j][a % self.p**j]

    def total(self):
        return self.values[0][0]

    def truncate(self, depth):
        return TabulatedDistribution(self.p, self.values[:depth + 1])

    def with_value(self, j, a, x):
        """Copy with one cell replaced (for fault injection)."""
        rows = [list(r) for r in self.values]
        rows[j][a] = x
        return TabulatedDistribution(self.p, tuple(tuple(r) for r in rows))

    def to_json(self):
        return {
            "p": self.p,
            "depth": self.depth,
            "ambient_level": self.level,
            "values": [[x.to_json() for x in row] for row in self.values],
        }

    @classmethod
    def from_json(cls, d):
        rows = tuple(tuple(element_from_json(x) for x in row) for row in d["values"])
        mu = cls(d["p"], rows)
        if mu.depth != d["depth"]:
            raise ValueError("depth does not match the tabulated values")
        return mu


def from_levels(p, rows):
    """Build from a list of per-level value lists."""
    return TabulatedDistribution(p, tuple(tuple(r) for r in rows))


def check_distribution_relation(mu):
    """Residual of mu(a, j) = sum_k mu(a + k p^j, j + 1) over all j < N."""
    if mu.depth < 1:
        raise ValueError("need depth >= 1")
    p = mu.p
    diffs = []
    for j in range(mu.depth):
        pj = p**j
        for a in range(pj):
            s = _zero_like(p)
            for k in range(p):
                s = s + mu(a + k * pj, j + 1)
            diffs.append(mu(a, j) - s)
    return residual_of(diffs, p)


def haar(p, depth, prec=DEFAULT_PREC):
    """a + p^j Z_p -> 1 / p^j."""
    rows = []
    for j in range(depth + 1):
        x = PadicScalar.from_rational(Fraction(1, p**j), p, prec)
        rows.append((x,) * p**j)
    return from_levels(p, rows)


def dirac(c, p, depth, prec=DEFAULT_PREC):
    one = PadicScalar.from_rational(1, p, prec)
    zero = PadicScalar.zero(p)
    return from_levels(p, [[one if a == c % p**j else zero for a in range(p**j)]
                           for j in range(depth + 1)])


def from_group_ring(xi, depth, mode="dirac"):
    """Distribution attached to xi = sum c_a gamma0^(-a) in Z_p[Gamma_n].

    ``mode="dirac"`` gives the measure sum c_a delta_a supported on the
    representatives 0 .. p^n - 1; it is bounded and agrees with xi on every
    level j <= n.  ``mode="split"`` refines level n by equal split instead,
    mu(b, j) = c_(b mod p^n) / p^(j - n), i.e. the measure xi * Haar.
    """
    p, n = xi.p, xi.level
    P = p**n
    rows = []
    for j in range(depth + 1):
        pj = p**j
        if j <= n:
            row = [_zero_like(p)] * pj
            for a, c in enumerate(xi.coeffs):
                row[a % pj] = row[a % pj] + c
        elif mode == "dirac":
            row = [xi.coeffs[b] if b < P else _zero_like(p) for b in range(pj)]
        elif mode == "split":
            row = [xi.coeffs[b % P] * Fraction(1, p ** (j - n)) for b in range(pj)]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        rows.append(row)
    return from_levels(p, rows)


def defect_by_level(mu):
    """max_a |p mu(a, j+1) - mu(a, j)|_p for each j < N."""
    p = mu.p
    out = []
    for j in range(mu.depth):
        pj = p**j
        out.append(max(size_of(mu(a, j + 1) * p - mu(a % pj, j), p) for a in range(p * pj)))
    return out


def volkenborn_defect(mu):
    """Empirical B(mu) over the tabulated levels."""
    if mu.depth < 1:
        raise ValueError("need depth >= 1")
    return max(defect_by_level(mu))


def limit_function(nu, x, j):
    """f_j(x) = p^j nu(x + p^j Z_p)."""
    if j > nu.depth:
        raise ValueError("level beyond the tabulated depth")
    return nu(x, j) * nu.p**j


# -- functions ----------------------------------------------------------------


class MahlerFunction:
    """A function on 0 .. p^N - 1 given by one of a few representations."""

    def __init__(self, kind, data, c1=False):
        self.kind = kind
        self.data = data
        self.c1 = c1

    @classmethod
    def polynomial(cls, coeffs):
        """sum coeffs[i] x^i."""
        return cls("polynomial", tuple(coeffs))

    @classmethod
    def binomial(cls, m):
        return cls("binomial", m)

    @classmethod
    def power(cls, T):
        """x -> T^x for a fixed element T (typically a root of unity)."""
        return cls("power", T)

    @classmethod
    def series(cls, coeffs, c1=False):
        """Truncated Mahler series sum a_m C(x, m)."""
        return cls("series", tuple(coeffs), c1)

    @classmethod
    def table(cls, values):
        return cls("table", tuple(values))

    def __call__(self, x):
        if self.kind == "polynomial":
            acc = 0
            for c in reversed(self.data):
                acc = acc * x + c
            return acc
        if self.kind == "binomial":
            return _binom(x, self.data)
        if self.kind == "power":
            return self.data**x
        if self.kind == "series":
            acc = 0
            for m, a in enumerate(self.data):
                if m > x:
                    break
                acc = acc + a * math.comb(x, m)
            return acc
        return self.data[x]

    def values(self, count):
        """[f(0), ..., f(count - 1)]."""
        if self.kind == "power":
            out, t = [], 1
            for _ in range(count):
                out.append(t)
                t = t * self.data
            return out
        if self.kind == "table":
            if count > len(self.data):
                raise ValueError("table too short")
            return list(self.data[:count])
        return [self(x) for x in range(count)]

    def __repr__(self):
        return f"MahlerFunction({self.kind}, {self.data!r})"


def mahler_coeffs(f, M=None):
    """a_m = (nabla^m f)(0) for m = 0 .. M, from values on 0 .. M."""
    vals = f.values(M + 1) if isinstance(f, MahlerFunction) else list(f)
    out = []
    row = vals
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def mahler_eval(coeffs, x):
    return MahlerFunction.series(coeffs)(x)


def c1_defect(coeffs, p, start=None):
    """max_{m >= start} m |a_m|_p, the tail size controlling the C^1 property."""
    start = len(coeffs) // 2 if start is None else start
    return max((m * size_of(a, p) for m, a in enumerate(coeffs) if m >= start), default=0.0)


# -- integration ----------------------------------------------------------------


@dataclass(frozen=True)
class IntegralReport:
    value: object
    cauchy_defect: float
    levels_used: int

    def to_json(self):
        defect = None if self.cauchy_defect == math.inf else self.cauchy_defect
        return {"value": self.value.to_json(), "cauchy_defect": defect,
                "levels_used": self.levels_used}


def _pair_sum(vals, mu, j):
    acc = _zero_like(mu.p)
    for a, fa in enumerate(vals):
        if isinstance(fa, (int, Fraction)) and fa == 0:
            continue
        acc = acc + mu(a, j) * fa
    return acc


def riemann_sum(f, mu, j):
    """S_j = sum_{a < p^j} f(a) mu(a + p^j Z_p)."""
    if j > mu.depth:
        raise ValueError("level beyond the tabulated depth")
    return _pair_sum(f.values(mu.p**j), mu, j)


def volkenborn_integral(f, mu):
    """Riemann sum at the deepest level with its Cauchy defect."""
    N = mu.depth
    vals = f.values(mu.p**N)
    s = _pair_sum(vals, mu, N)
    if N == 0:
        return IntegralReport(s, math.inf, 1)
    prev = _pair_sum(vals[:mu.p ** (N - 1)], mu, N - 1)
    return IntegralReport(s, size_of(s - prev, mu.p), N + 1)


@dataclass(frozen=True)
class FourierCoefficient:
    m: int
    value: object
    cauchy_defect: float
    c: float
    bound: float
    within_bound: bool


def fourier_bound(mu):
    """c = max(C p, |mu(Z_p)|) with C = max(B(mu), |mu(Z_p)|)."""
    total = size_of(mu.total(), mu.p)
    C = max(volkenborn_defect(mu), total)
    return max(C * mu.p, total)


def fourier_coefficient(mu, m, c=None):
    """T_{N,m} = integral of C(x, m) at the deepest level, checked against c m."""
    c = fourier_bound(mu) if c is None else c
    rep = volkenborn_integral(MahlerFunction.binomial(m), mu)
    # for m = 0 the integral is mu(Z_p) itself
    bound = c * m if m else size_of(mu.total(), mu.p)
    within = size_of(rep.value, mu.p) <= bound * _SLACK
    return FourierCoefficient(m, rep.value, rep.cauchy_defect, c, bound, within)


def fourier_eval_at_root(mu, k, j, ctx=None):
    """sum_{a < p^j} zeta_{p^j}^(k a) mu(a + p^j Z_p), an exact finite sum."""
    if j > mu.depth:
        raise ValueError(f"root of order {mu.p}^{j} exceeds depth {mu.depth}")
    p = mu.p
    if ctx is None:
        ctx = field(p, max(j - 1, mu.level or 0, 0))
    P = p**j
    acc = ctx.zero()
    for a in range(P):
        x = mu(a, j)
        if x.is_zero() and x.prec == math.inf:
            continue
        acc = acc + ctx.zeta(k * a, P) * x
    return acc


def convolve(nu, mu, j=None):
    """Additive convolution on Z/p^i for every level i <= j."""
    if nu.p != mu.p:
        raise ValueError("prime mismatch")
    j = min(nu.depth, mu.depth) if j is None else j
    if j > nu.depth or j > mu.depth:
        raise ValueError("depth mismatch")
    p = nu.p
    rows = []
    for i in range(j + 1):
        P = p**i
        row = []
        for c in range(P):
            acc = _zero_like(p)
            for a in range(P):
                acc = acc + nu(a, i) * mu(c - a, i)
            row.append(acc)
        rows.append(row)
    return from_levels(p, rows)


def indefinite_sum_values(g, r=1):
    """Values of S^r g on the same points, with S g(0) = 0 and nabla S g = g."""
    if r < 1:
        raise ValueError("r must be >= 1")
    vals = list(g)
    for _ in range(r):
        out, acc = [], 0
        for v in vals:
            out.append(acc)
            acc = acc + v
        vals = out
    return vals


# -- the transform identity --------------------------------------------------------


@dataclass(frozen=True)
class TransformReport:
    roots: object        # (nu * mu)^(zeta) vs nu^(zeta) mu^(zeta)
    corrections: object  # g_m via S^(m+1) vs the double-sum route
    polynomial: object   # coefficientwise identity in X = T - 1
    g: tuple

    def passed(self, digits=0):
        return all(r.vanishes(digits) for r in (self.roots, self.corrections, self.polynomial))

    def to_json(self):
        return {"roots": self.roots.to_json(), "corrections": self.corrections.to_json(),
                "polynomial": self.polynomial.to_json(), "g": [x.to_json() for x in self.g]}


def correction_coefficients(nu, mu, j, M):
    """g_m = integral of S^(m+1)(f_nu o iota) d mu at level j, for m < M.

    f_nu is the level-j approximant and iota(x) = p^j - 1 - x the involution
    on the representatives 0 .. p^j - 1.
    """
    P = nu.p**j
    f = [limit_function(nu, x, j) for x in range(P)]
    g = [f[P - 1 - y] for y in range(P)]
    out = []
    s = g
    for _ in range(M):
        s = indefinite_sum_values(s, 1)
        out.append(_pair_sum(s, mu, j))
    return out


def _double_sum_route(nu, mu, j, M):
    p = nu.p
    P = p**j
    f = [limit_function(nu, x, j) for x in range(P)]
    h = []
    for c in range(P - 1):
        acc = _zero_like(p)
        for d in range(1, P - c):
            acc = acc + mu(c + d, j) * f[P - d]
        h.append(acc)
    out = []
    for m in range(M):
        acc = _zero_like(p)
        for c in range(m, P - 1):
            acc = acc + h[c] * math.comb(c, m)
        out.append(acc)
    return out


def transform_identity_check(nu, mu, j, M=8, ctx=None):
    """Check the convolution transform identity at level j.

    (a) at every zeta of order dividing p^j the correction term carries
        log_p(zeta) = 0, so (nu * mu)^ = nu^ mu^ exactly;
    (b) the first M correction coefficients agree along two routes;
    (c) the finite-level polynomial identity
        sum_{a,b} T^(a+b) nu(a) mu(b) = sum_c T^c (nu*mu)(c)
            + ((T^P - 1) / P) sum_m g_m (T - 1)^m
        holds coefficientwise in X = T - 1 for degrees < M.
    """
    p = nu.p
    P = p**j
    conv = convolve(nu, mu, j)
    if ctx is None:
        ctx = field(p, max(j - 1, nu.level or 0, mu.level or 0, 0))
    diffs = []
    for k in range(P):
        lhs = fourier_eval_at_root(conv, k, j, ctx)
        rhs = fourier_eval_at_root(nu, k, j, ctx) * fourier_eval_at_root(mu, k, j, ctx)
        diffs.append(lhs - rhs)
    roots = residual_of(diffs, p)

    g = correction_coefficients(nu, mu, j, M)
    g2 = _double_sum_route(nu, mu, j, M)
    corrections = residual_of([x - y for x, y in zip(g, g2)], p)

    w = [_zero_like(p)] * (2 * P - 1)
    for a in range(P):
        x = nu(a, j)
        if x.is_zero():
            continue
        for b in range(P):
            w[a + b] = w[a + b] + x * mu(b, j)
    diffs = []
    for k in range(M):
        lhs = _zero_like(p)
        for s in range(k, 2 * P - 1):
            lhs = lhs + w[s] * math.comb(s, k)
        r1 = _zero_like(p)
        for c in range(k, P):
            r1 = r1 + conv(c, j) * math.comb(c, k)
        r2 = _zero_like(p)
        for i in range(1, k + 1):
            r2 = r2 + g2[k - i] * Fraction(math.comb(P, i), P)
        diffs.append(lhs - r1 - r2)
    return TransformReport(roots, corrections, residual_of(diffs, p), tuple(g))
