"""Elements of the group ring K[Gamma_n], Gamma_n = Z/p^n.

``GroupRingElement(p, level, coeffs)`` stands for ``sum(c_a * gamma0**(-a))``,
matching the identification of a distribution mu with
``sum(mu(a + p^n Z_p) * gamma0**(-a))``.  Its Fourier dual at
``T = zeta_{p^n}**c`` is ``sum(c_a * T**a)``, i.e. the Fourier transform of
the corresponding measure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo_field import CycloElement, field
from .padic_core import DEFAULT_PREC, PadicScalar


def as_element(x, p, prec=DEFAULT_PREC):
    if isinstance(x, (PadicScalar, CycloElement)):
        return x
    return PadicScalar.from_rational(x, p, prec)


@dataclass(frozen=True)
class GroupRingElement:
    p: int
    level: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.p**self.level:
            raise ValueError("need p^level coefficients")
        object.__setattr__(self, "coeffs", tuple(as_element(c, self.p) for c in self.coeffs))

    @property
    def order(self):
        return self.p**self.level

    @classmethod
    def group_element(cls, p, level, s=0):
        """gamma0**s."""
        P = p**level
        return cls(p, level, tuple(1 if a == (-s) % P else 0 for a in range(P)))

    @classmethod
    def norm_element(cls, p, level):
        """sum over all of Gamma_n."""
        return cls(p, level, (1,) * p**level)

    def __mul__(self, other):
        if other.level != self.level:
            raise ValueError("level mismatch")
        P = self.order
        out = []
        for c in range(P):
            acc = PadicScalar.zero(self.p)
            for a in range(P):
                acc = acc + self.coeffs[a] * other.coeffs[(c - a) % P]
            out.append(acc)
        return GroupRingElement(self.p, self.level, tuple(out))

    def image(self, level):
        """Natural projection Gamma_n -> Gamma_level."""
        if level > self.level:
            raise ValueError("can only project to a lower level")
        P = self.p**level
        out = [PadicScalar.zero(self.p)] * P
        for a, c in enumerate(self.coeffs):
            out[a % P] = out[a % P] + c
        return GroupRingElement(self.p, level, tuple(out))

    def duals(self, ctx=None):
        """Values sum_a c_a zeta_{p^n}^(c a) for c = 0 .. p^n - 1."""
        ctx = ctx or field(self.p, max(self.level - 1, 0))
        P = self.order
        out = []
        for c in range(P):
            acc = ctx.zero()
            for a, x in enumerate(self.coeffs):
                acc = acc + ctx.zeta(c * a, P) * x
            out.append(acc)
        return out

    @classmethod
    def from_duals(cls, p, level, duals, ctx=None):
        """Inverse transform: c_a = p^-n sum_c zeta_{p^n}^(-c a) dual[c]."""
        ctx = ctx or field(p, max(level - 1, 0))
        P = p**level
        coeffs = []
        for a in range(P):
            acc = ctx.zero()
            for c, d in enumerate(duals):
                acc = acc + ctx.zeta(-c * a, P) * d
            coeffs.append(acc.shifted(-level))
        return cls(p, level, tuple(coeffs))

    def to_json(self, ctx=None):
        coeffs = [c.to_json() for c in self.coeffs]
        return {"level": self.level, "p": self.p, "coeffs": coeffs,
                "duals": [d.to_json() for d in self.duals(ctx)]}


def element_from_json(d):
    if "level" in d:
        return CycloElement.from_json(d)
    return PadicScalar.from_json(d)
