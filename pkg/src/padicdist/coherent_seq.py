"""Norm-coherent sequences in the cyclotomic tower and their distributions.

A sequence (l_n) with l_n in K_n and N(l_n) = l_(n-1) gives the distribution

    lambda(a + p^n Z_p) = -log_p(sigma_{(1+p)^a} l_n),

and for a tame character chi the twisted version lambda_chi, which also
sums over Delta = Teichmuller lifts of (Z/p)^x weighted by conj(chi).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .characters import DirichletCharacter, least_primitive_root, teichmuller_lift
from .cyclo_field import CycloElement, field, iwasawa_log
from .padic_core import DEFAULT_PREC, PadicScalar, _teichmuller_int, residual_of
from .volkenborn import convolve, from_group_ring, from_levels


@dataclass(frozen=True)
class NormCoherentSequence:
    p: int
    rule: str
    c: int = 0
    levels: tuple = ()
    prec: int = DEFAULT_PREC

    @classmethod
    def one_minus_zeta(cls, p, prec=DEFAULT_PREC):
        return cls(p, "one_minus_zeta", prec=prec)

    @classmethod
    def cyclo_unit(cls, p, c, prec=DEFAULT_PREC):
        """l_n = zeta_{p-1}^c - zeta_{p^(n+1)}, zeta_{p-1} = omega(g)."""
        return cls(p, "cyclo_unit", c % (p - 1), prec=prec)

    @classmethod
    def from_levels(cls, levels, check=True):
        levels = tuple(levels)
        if not levels:
            raise ValueError("empty sequence")
        for n, x in enumerate(levels):
            if x.ctx.n != n:
                raise ValueError(f"entry {n} lives at level {x.ctx.n}")
        seq = cls(levels[0].ctx.p, "levels", levels=levels, prec=levels[0].ctx.prec)
        if check and len(levels) > 1:
            r = verify_norm_coherence(seq, len(levels) - 1)
            if not r.vanishes():
                raise ValueError(f"sequence is not norm coherent (residual {r.size})")
        return seq

    @classmethod
    def from_spec(cls, text, p, prec=DEFAULT_PREC):
        """Parse ``one-minus-zeta`` or ``cyclo-unit:c=3``."""
        text = text.strip()
        if text == "one-minus-zeta":
            return cls.one_minus_zeta(p, prec)
        m = re.fullmatch(r"cyclo-unit:c=(-?\d+)", text)
        if m:
            return cls.cyclo_unit(p, int(m.group(1)), prec)
        raise ValueError(f"unknown sequence {text!r}")

    @property
    def depth(self):
        return len(self.levels) - 1 if self.rule == "levels" else None

    def element(self, n):
        """l_n in K_n."""
        if self.rule == "levels":
            if n >= len(self.levels):
                raise ValueError(f"sequence only given to level {len(self.levels) - 1}")
            return self.levels[n]
        ctx = field(self.p, n, self.prec)
        if self.rule == "one_minus_zeta":
            return 1 - ctx.zeta()
        g = least_primitive_root(self.p)
        root = pow(_teichmuller_int(g % self.p, self.p, self.prec), self.c, self.p**self.prec)
        return PadicScalar(self.p, root, 0, self.prec) - ctx.zeta()

    def to_json(self, depth):
        return {"levels": [self.element(n).to_json() for n in range(depth + 1)]}

    @classmethod
    def from_json(cls, d, check=True):
        return cls.from_levels([CycloElement.from_json(x) for x in d["levels"]], check)


def verify_norm_coherence(seq, N):
    """Residual of N(l_n) - l_(n-1) over 1 <= n <= N."""
    if N < 1:
        raise ValueError("need depth >= 1")
    diffs = []
    for n in range(1, N + 1):
        diffs.append(seq.element(n).norm_to_sublevel() - seq.element(n - 1))
    return residual_of(diffs, seq.p)


def _logs(seq, N):
    return [iwasawa_log(seq.element(n)) for n in range(N + 1)]


def lambda_from_sequence(seq, N):
    """lambda(a + p^n Z_p) = -log_p(sigma_{(1+p)^a} l_n), values in K_N."""
    p = seq.p
    rows = []
    for n, L in enumerate(_logs(seq, N)):
        mod = p ** (n + 1)
        rows.append([-L.galois(pow(1 + p, a, mod)).embed(N) for a in range(p**n)])
    return from_levels(p, rows)


def lambda_chi(seq, chi, N):
    """lambda_chi(a + p^n Z_p) = -sum_delta conj(chi)(delta) log_p(sigma_{(1+p)^a omega(delta)} l_n)."""
    if not isinstance(chi, DirichletCharacter):
        chi = DirichletCharacter(seq.p, 0, chi)
    if chi.u:
        raise ValueError("lambda_chi needs a tame character")
    p = seq.p
    W = seq.prec
    weights = {d: PadicScalar(p, pow(_teichmuller_int(d, p, W), (-chi.j) % (p - 1), p**W), 0, W)
               for d in range(1, p)}
    rows = []
    for n, L in enumerate(_logs(seq, N)):
        mod = p ** (n + 1)
        row = []
        for a in range(p**n):
            ga = pow(1 + p, a, mod)
            acc = L.ctx.zero()
            for d in range(1, p):
                b = ga * teichmuller_lift(d, p, n) % mod
                acc = acc + L.galois(b) * weights[d]
            row.append(-acc.embed(N))
        rows.append(row)
    return from_levels(p, rows)


def act_by_measure(lam, xi, j=None):
    """Convolution of lam with the measure of xi, through level j.

    With xi = gamma0^s this is the translate a -> lam(a + s), i.e. the
    distribution of the sequence sigma_{(1+p)^s} l_n.
    """
    j = xi.level if j is None else j
    if j > lam.depth or xi.level > j:
        raise ValueError("level overflow")
    return convolve(lam.truncate(j), from_group_ring(xi, j), j)
