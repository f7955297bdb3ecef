"""Dirichlet characters of p-power conductor and their Gauss sums.

A character mod p^(n+1) is written phi = omega^j * psi^u where omega is the
Teichmuller character and psi is the wild character with
psi(1 + p) = zeta_{p^n}^u.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .cyclo_field import field
from .padic_core import DEFAULT_PREC, PadicScalar, _teichmuller_int


@lru_cache(maxsize=None)
def _dlog_table(p, n):
    # (1 + p)^d mod p^(n+1) -> d, for d < p^n
    mod = p ** (n + 1)
    table = {}
    x = 1
    for d in range(p**n):
        table[x] = d
        x = x * (1 + p) % mod
    return table


def wild_dlog(a, p, n):
    """d mod p^n with <a> = (1 + p)^d mod p^(n+1), where <a> = a / omega(a)."""
    mod = p ** (n + 1)
    w = _teichmuller_int(a % p, p, n + 1)
    return _dlog_table(p, n)[a * pow(w, -1, mod) % mod]


@lru_cache(maxsize=None)
def least_primitive_root(p):
    """Least primitive root modulo p^2 (hence modulo every p^k)."""
    order = p * (p - 1)
    factors = {f for f in range(2, p) if (p - 1) % f == 0 and all(f % d for d in range(2, f))} | {p}
    for g in range(2, p * p):
        if g % p and all(pow(g, order // f, p * p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root")


def teichmuller_lift(a, p, n):
    """Teichmuller representative of a mod p, as an integer mod p^(n+1)."""
    return _teichmuller_int(a % p, p, n + 1)


@dataclass(frozen=True)
class DirichletCharacter:
    p: int
    n: int
    j: int = 0
    u: int = 0

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % (self.p - 1))
        object.__setattr__(self, "u", self.u % self.p**self.n)

    @property
    def tame(self):
        return DirichletCharacter(self.p, self.n, self.j, 0)

    @property
    def wild(self):
        return DirichletCharacter(self.p, self.n, 0, self.u)

    def conj(self):
        return DirichletCharacter(self.p, self.n, -self.j, -self.u)

    def __mul__(self, other):
        if other.p != self.p:
            raise ValueError("prime mismatch")
        n = max(self.n, other.n)
        su = self.u * self.p ** (n - self.n)
        ou = other.u * self.p ** (n - other.n)
        return DirichletCharacter(self.p, n, self.j + other.j, su + ou)

    def wild_order(self):
        return self.p**self.n // math.gcd(self.u, self.p**self.n)

    def conductor(self):
        if self.u:
            return self.p * self.wild_order()
        return self.p if self.j else 1

    def parity(self):
        """phi(-1) = (-1)^j; wild characters are even."""
        return -1 if self.j % 2 else 1

    def is_even(self):
        return self.parity() == 1

    def value_parts(self, a):
        """(omega(a)^j as an integer mod p^W, exponent k of zeta_{p^n}) or None if p | a."""
        if a % self.p == 0:
            return None
        return self.j, self.u * wild_dlog(a, self.p, self.n) % self.p**self.n

    def value(self, a, ctx=None, prec=DEFAULT_PREC):
        """phi(a) in K_L with L = ctx.n >= n - 1 (default L = n)."""
        ctx = field(self.p, self.n, prec) if ctx is None else ctx
        if a % self.p == 0:
            return ctx.zero()
        w = _teichmuller_int(a % self.p, self.p, ctx.prec)
        t = pow(w, self.j, self.p**ctx.prec)
        k = self.u * wild_dlog(a, self.p, self.n) % self.p**self.n
        return ctx.sum_roots([(k * ctx.q // self.p**self.n, PadicScalar(self.p, t, 0, ctx.prec))])

    def __str__(self):
        return f"omega^{self.j}*psi^{self.u}@{self.p}^{self.n + 1}"

    @classmethod
    def parse(cls, text):
        """Parse ``omega^j*psi^u@p^(n+1)``."""
        m = re.fullmatch(r"\s*omega\^(-?\d+)\s*\*\s*psi\^(-?\d+)\s*@\s*(\d+)\^\(?(\d+)\)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse character {text!r}")
        j, u, p, k = map(int, m.groups())
        if k < 1:
            raise ValueError("modulus exponent must be >= 1")
        return cls(p, k - 1, j, u)


def char_value(phi, a, ctx=None):
    return phi.value(a, ctx)


def gauss_sum(phi, ctx=None):
    """tau(phi) = sum_{a=1}^{f} phi(a) zeta_f^a over the conductor f."""
    p = phi.p
    f = phi.conductor()
    if f == 1:
        raise ValueError("Gauss sum of the trivial character")
    ctx = field(p, phi.n) if ctx is None else ctx
    if ctx.q % f:
        raise ValueError(f"conductor {f} exceeds the ambient field {ctx}")
    mod = p**ctx.prec
    step = ctx.q // p**phi.n
    terms = []
    for a in range(1, f + 1):
        if a % p == 0:
            continue
        t = pow(_teichmuller_int(a % p, p, ctx.prec), phi.j, mod)
        k = phi.u * wild_dlog(a, p, phi.n) % p**phi.n
        terms.append((k * step + a * (ctx.q // f), PadicScalar(p, t, 0, ctx.prec)))
    return ctx.sum_roots(terms)


def gauss_sum_guard(phi, ctx=None):
    """tau(phi) tau(conj phi) - phi(-1) f; zero for a correct Gauss sum."""
    ctx = field(phi.p, phi.n) if ctx is None else ctx
    return gauss_sum(phi, ctx) * gauss_sum(phi.conj(), ctx) - phi.parity() * phi.conductor()


def inverse_gauss_sum(phi, ctx=None):
    """1 / tau(phi) via tau(phi) tau(conj phi) = phi(-1) f, checked first."""
    ctx = field(phi.p, phi.n) if ctx is None else ctx
    if not gauss_sum_guard(phi, ctx).is_zero():
        raise ArithmeticError(f"Gauss sum identity fails for {phi}")
    return gauss_sum(phi.conj(), ctx) / (phi.parity() * phi.conductor())
