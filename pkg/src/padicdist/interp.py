"""Gauss-sum interpolation, Leopoldt's formula and the annihilators M_chi.

Conventions: zeta_{p-1} = omega(g) for g the least primitive root mod p^2;
the wild character psi with exponent u has zeta_psi = conj(psi)(1 + p),
i.e. zeta_psi = zeta_{p^n}^(-u).  A Fourier evaluation at zeta_psi is
``fourier_eval_at_root(mu, -u, n)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache

from .characters import (
    DirichletCharacter,
    gauss_sum,
    inverse_gauss_sum,
    least_primitive_root,
)
from .coherent_seq import NormCoherentSequence, lambda_chi
from .cyclo_field import field, iwasawa_log
from .group_ring import GroupRingElement
from .padic_core import DEFAULT_PREC, PadicScalar, _teichmuller_int, residual_of
from .volkenborn import fourier_eval_at_root

SCHEMA_COLUMNS = ("p", "n", "chi_exp", "psi_exp", "c", "ratio_valuation")


class OddCharacterError(ValueError):
    """Raised for odd characters, whose log sums vanish identically."""


def _tame_root(p, t, prec):
    g = least_primitive_root(p)
    return PadicScalar(p, pow(_teichmuller_int(g % p, p, prec), t % (p - 1), p**prec), 0, prec)


def _galois_sum(x, phi, ctx):
    """sum_{b=1..f, p∤b} conj(phi)(b) sigma_b(log x), f the conductor of phi."""
    L = iwasawa_log(x)
    bar = phi.conj()
    acc = ctx.zero()
    for b in range(1, phi.conductor() + 1):
        if b % phi.p:
            acc = acc + L.galois(b) * bar.value(b, ctx)
    return acc


def log_sum(phi, t=0, ctx=None):
    """sum_{b=1}^{f} log_p(zeta_{p-1}^t - zeta_f^b) conj(phi)(b)."""
    p = phi.p
    ctx = field(p, phi.n) if ctx is None else ctx
    f = phi.conductor()
    if f == 1:
        raise ValueError("trivial character")
    x = _tame_root(p, t, ctx.prec) - ctx.zeta(1, f)
    return _galois_sum(x, phi, ctx)


def leopoldt_lp1(phi, ctx=None):
    """L_p(1, phi) = -(1 - phi(p)/p) (1/tau(conj phi)) sum log_p(1 - zeta_f^a) conj(phi)(a)."""
    if phi.conductor() == 1:
        raise ValueError("L_p(1, phi) of the trivial character")
    if not phi.is_even():
        raise OddCharacterError(f"{phi} is odd: the log sum vanishes identically")
    ctx = field(phi.p, phi.n) if ctx is None else ctx
    # p divides every nontrivial conductor here, so phi(p) = 0
    return -(inverse_gauss_sum(phi.conj(), ctx) * log_sum(phi, 0, ctx))


# -- an independent L-value --------------------------------------------------------

# fundamental units (a + b sqrt p) / 2 of Q(sqrt p), class number 1
_QUADRATIC_UNITS = {5: (1, 1), 13: (3, 1)}


def sqrt_in_k0(p, prec=DEFAULT_PREC):
    """A square root of p in K_0 = Q_p(zeta_p), by residue search and Newton."""
    ctx = field(p, 0, prec)
    pi = ctx.pi()
    h = (p - 1) // 2
    w = ctx.scalar(p) / pi ** (p - 1)  # unit with sqrt(p) = pi^h sqrt(w)
    # zeta = 1 mod pi, so the residue of w is the sum of its zeta-coordinates
    r0 = sum(x.residue() for x in w.zeta_coeffs()) % p
    roots = [y for y in range(1, p) if y * y % p == r0]
    if not roots:
        raise ArithmeticError("no square root mod pi")
    u = ctx.scalar(roots[0])
    for _ in range(2 * prec.bit_length() + 4):
        u = (u + w / u) / 2
    return u * pi**h


def class_number_oracle(p=5, prec=DEFAULT_PREC):
    """Compare L_p(1, chi), chi quadratic of conductor p, with +-2 log_p(eps) / tau(chi)."""
    if p not in _QUADRATIC_UNITS:
        raise ValueError(f"no stored fundamental unit for Q(sqrt {p})")
    ctx = field(p, 0, prec)
    chi = DirichletCharacter(p, 0, (p - 1) // 2)
    a, b = _QUADRATIC_UNITS[p]
    s = sqrt_in_k0(p, prec)
    sq = residual_of([s * s - p], p)
    eps = (s * b + a) / 2
    lp = leopoldt_lp1(chi, ctx)
    base = iwasawa_log(eps) * 2 / gauss_sum(chi, ctx)
    res = {sign: residual_of([lp - base * sign], p) for sign in (1, -1)}
    return OracleReport(lp, base, res[1], res[-1], sq)


@dataclass(frozen=True)
class OracleReport:
    lp1: object
    candidate: object   # 2 log_p(eps) / tau(chi); the other candidate is its negative
    plus: object
    minus: object
    sqrt_check: object

    def matching_signs(self, digits):
        p = self.lp1.ctx.p
        return [s for s, r in ((1, self.plus), (-1, self.minus)) if r.agrees(digits, p)]


# -- interpolation ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lambda_chi_cached(p, j, t, n, prec):
    return lambda_chi(NormCoherentSequence.cyclo_unit(p, t, prec), DirichletCharacter(p, 0, j), n)


@dataclass(frozen=True)
class InterpolationReport:
    phi: str
    lhs: object
    rhs: object
    residual: object
    corollary: object = None
    odd: bool = False

    @property
    def digits(self):
        rs = [self.residual] + ([self.corollary] if self.corollary is not None else [])
        return min(r.digits if r.size == 0.0 else 0 for r in rs)

    def passed(self, digits=10):
        rs = [self.residual] + ([self.corollary] if self.corollary is not None else [])
        return all(r.vanishes(digits) for r in rs)


def verify_interpolation(p, n, chi_exp, psi_exp, t=0, prec=DEFAULT_PREC):
    """Two-path check of lambda_chi^(zeta_psi) against the conductor sum."""
    phi = DirichletCharacter(p, n, chi_exp, psi_exp)
    ctx = field(p, n, prec)
    lam = _lambda_chi_cached(p, phi.j, t % (p - 1), n, prec)
    lhs = fourier_eval_at_root(lam, -phi.u, n, ctx)
    f = phi.conductor()
    if f == 1:
        rhs = ctx.zero()
    else:
        rhs = -log_sum(phi, t, ctx)
    cor = None
    if t % (p - 1) == 0 and f > 1:
        if phi.is_even():
            cor = residual_of([lhs - gauss_sum(phi.conj(), ctx) * leopoldt_lp1(phi, ctx)], p)
        else:
            cor = residual_of([lhs], p)
    return InterpolationReport(str(phi), lhs, rhs, residual_of([lhs - rhs], p), cor, not phi.is_even())


# -- unit ratios and annihilators ---------------------------------------------------


def upsilon_hat(p, n, chi_exp, c, psi_exp, prec=DEFAULT_PREC):
    lam = _lambda_chi_cached(p, chi_exp % (p - 1), c % (p - 1), n, prec)
    return fourier_eval_at_root(lam, -psi_exp, n, field(p, n, prec))


@dataclass(frozen=True)
class RatioRow:
    p: int
    n: int
    chi_exp: int
    psi_exp: int
    c: int
    ratio_valuation: Fraction

    def as_row(self):
        return [self.p, self.n, self.chi_exp, self.psi_exp, self.c, str(self.ratio_valuation)]


def unit_ratio_table(p, n, chi_exp, prec=DEFAULT_PREC, include_trivial=False):
    """v_p(upsilon_chi^(zeta_psi) / tau(conj(chi psi))) for c != 0 and wild psi."""
    if n < 1 and not include_trivial:
        raise ValueError("wild characters need n >= 1")
    chi = DirichletCharacter(p, n, chi_exp)
    if chi.conductor() == 1 or not chi.is_even():
        raise ValueError("need an even nontrivial tame character")
    ctx = field(p, n, prec)
    rows = []
    for c in range(1, p - 1):
        for u in range(0 if include_trivial else 1, p**n):
            phi = DirichletCharacter(p, n, chi_exp, u)
            ups = upsilon_hat(p, n, chi_exp, c, u, prec)
            if ups.is_zero():
                raise ArithmeticError(f"upsilon^ vanishes at precision for c={c}, psi^{u}")
            tau = gauss_sum(phi.conj(), ctx)
            rows.append(RatioRow(p, n, chi.j, u, c, ups.valuation() - tau.valuation()))
    return rows


def select_tame_index(rows):
    """Least c whose ratios are units for every psi in the table, or None."""
    for c in sorted({r.c for r in rows}):
        if all(r.ratio_valuation == 0 for r in rows if r.c == c):
            return c
    return None


def xi_sequence(p, N, prec=DEFAULT_PREC):
    """x_n = (zeta^b - 1) / (zeta - 1), b = omega(g)(1 + p) mod p^(n+1)."""
    g = least_primitive_root(p)
    levels = []
    for n in range(N + 1):
        ctx = field(p, n, prec)
        b = _teichmuller_int(g % p, p, n + 1) * (1 + p) % ctx.q
        levels.append(ctx.sum_roots([(k, 1) for k in range(b)]))
    return NormCoherentSequence.from_levels(levels)


@lru_cache(maxsize=None)
def _xi_lambda(p, j, n, prec):
    return lambda_chi(xi_sequence(p, n, prec), DirichletCharacter(p, 0, j), n)


def _check_even(p, chi_exp):
    chi = DirichletCharacter(p, 0, chi_exp)
    if chi.conductor() == 1 or not chi.is_even():
        raise ValueError("need an even nontrivial tame character")
    return chi


def xi_upsilon_group_elements(p, chi_exp, c, n, prec=DEFAULT_PREC):
    """(Xi, Upsilon) in K_n[Gamma_n], coefficient a on gamma0^(-a)."""
    chi = _check_even(p, chi_exp)
    xi = _xi_lambda(p, chi.j, n, prec)
    ups = _lambda_chi_cached(p, chi.j, c % (p - 1), n, prec)
    return (GroupRingElement(p, n, xi.values[n]), GroupRingElement(p, n, ups.values[n]))


def xi_direct(p, n, chi_exp, psi_exp, prec=DEFAULT_PREC):
    """Xi^(zeta_psi) by the conductor sum: (phi(b) - 1) times -sum log(1 - zeta_f^a) conj(phi)(a).

    log x_n = (sigma_b - 1) log(1 - zeta), and sigma_b scales the transform by phi(b).
    """
    phi = DirichletCharacter(p, n, chi_exp, psi_exp)
    ctx = field(p, n, prec)
    g = least_primitive_root(p)
    b = _teichmuller_int(g % p, p, n + 1) * (1 + p) % ctx.q
    return (phi.value(b, ctx) - 1) * -log_sum(phi, 0, ctx)


def isotypic_residual(x, chi_exp, p):
    """sigma_{omega(d)}(x) - chi(d) x over d in (Z/p)^x, for x in K_n."""
    n = x.ctx.n
    W = x.ctx.prec
    diffs = []
    for d in range(2, p):
        w = _teichmuller_int(d, p, n + 1)
        chi_d = PadicScalar(p, pow(_teichmuller_int(d, p, W), chi_exp % (p - 1), p**W), 0, W)
        diffs.append(x.galois(w) - x * chi_d)
    return residual_of(diffs, p)


@dataclass
class AnnihilatorReport:
    M: GroupRingElement
    c: int
    off_rational: object       # size of pi-coordinates above index 0
    min_valuation: object      # smallest v_p among the Z_p-parts
    digits: float              # smallest absolute precision of a coefficient
    integral: bool
    ratios: list = dfield(default_factory=list)

    def to_json(self):
        return {"c": self.c, "integral": self.integral, "digits": self.digits,
                "min_valuation": None if self.min_valuation is None else str(self.min_valuation),
                "off_rational": self.off_rational.to_json(), "M": self.M.to_json()}


def annihilator_M(p, chi_exp, c, n, prec=DEFAULT_PREC):
    """M = Upsilon^-1 Xi through the Fourier duals, with an integrality report."""
    xi, ups = xi_upsilon_group_elements(p, chi_exp, c, n, prec)
    ctx = field(p, n, prec)
    xd, ud = xi.duals(ctx), ups.duals(ctx)
    if any(u.is_zero() for u in ud):
        raise ArithmeticError("a dual value of Upsilon vanishes at precision")
    ratios = [x / u for x, u in zip(xd, ud)]
    M = GroupRingElement.from_duals(p, n, ratios, ctx)
    offs = []
    vals = []
    for x in M.coeffs:
        pc = x.pi_coeffs()
        offs.extend(pc[1:])
        if not pc[0].is_zero():
            vals.append(pc[0].valuation())
    off = residual_of(offs, p)
    digits = min(x.prec for x in M.coeffs)
    minv = min(vals) if vals else None
    integral = off.size == 0.0 and (minv is None or minv >= 0)
    return AnnihilatorReport(M, c, off, minv, digits, integral, ratios)


def scalar_coeffs(M):
    """Z_p-parts of the coefficients of M (pi-coordinate 0)."""
    return [x.pi_coeffs()[0] if hasattr(x, "pi_coeffs") else x for x in M.coeffs]


# -- regulator ----------------------------------------------------------------------


def _det(rows):
    """Determinant by Gaussian elimination with largest-size pivots."""
    a = [list(r) for r in rows]
    size = len(a)
    det = None
    sign = 1
    for i in range(size):
        piv = max(range(i, size), key=lambda r: a[r][i].size())
        if a[piv][i].is_zero():
            raise ArithmeticError("singular log table at precision")
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        inv = a[i][i].inverse()
        for r in range(i + 1, size):
            if a[r][i].is_zero():
                continue
            m = a[r][i] * inv
            for k in range(i, size):
                a[r][k] = a[r][k] - m * a[i][k]
        det = a[i][i] if det is None else det * a[i][i]
    return det * sign


def circulant(coeffs):
    P = len(coeffs)
    return [[coeffs[(j - i) % P] for j in range(P)] for i in range(P)]


@dataclass(frozen=True)
class RegulatorReport:
    c: int
    ratio_valuation: Fraction
    det_residual: object

    def to_json(self):
        return {"c": self.c, "ratio_valuation": str(self.ratio_valuation),
                "det_residual": self.det_residual.to_json()}


def regulator_product_check(p, chi_exp, c, n, prec=DEFAULT_PREC):
    """v_p of prod_psi upsilon^(zeta_psi) / prod_psi tau(conj(chi psi)), all psi."""
    _check_even(p, chi_exp)
    ctx = field(p, n, prec)
    _, ups = xi_upsilon_group_elements(p, chi_exp, c, n, prec)
    num = ctx.one()
    den = ctx.one()
    for u in range(p**n):
        phi = DirichletCharacter(p, n, chi_exp, u)
        num = num * upsilon_hat(p, n, chi_exp, c, u, prec)
        den = den * gauss_sum(phi.conj(), ctx)
    ratio = num.valuation() - den.valuation()
    det = _det(circulant(list(ups.coeffs)))
    duals = ctx.one()
    for d in ups.duals(ctx):
        duals = duals * d
    return RegulatorReport(c, ratio, residual_of([det - duals], p))


def circulant_identity_check(trials=100, seed=0, prec=DEFAULT_PREC):
    """Integer circulant determinants versus products of their DFT eigenvalues.

    The eigenvalues sum_a c_a zeta^(k a) are taken in a p-adic cyclotomic
    field with zeta of order P = p^k; the determinant comes from sympy.
    Returns the number of mismatches.
    """
    import sympy

    rng = random.Random(seed)
    shapes = [(3, 1), (5, 1), (7, 1), (3, 2)]
    bad = 0
    for _ in range(trials):
        p, k = rng.choice(shapes)
        P = p**k
        coeffs = [rng.randint(-9, 9) for _ in range(P)]
        det = int(sympy.Matrix(circulant(coeffs)).det())
        ctx = field(p, k - 1, prec)
        prod = ctx.one()
        for j in range(P):
            prod = prod * ctx.sum_roots([(j * a * (ctx.q // P), x) for a, x in enumerate(coeffs)])
        if not (prod - det).is_zero():
            bad += 1
    return bad
