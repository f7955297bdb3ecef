"""Elements of Q_p at capped absolute precision.

A nonzero :class:`PadicScalar` is ``unit * p**val`` where ``unit`` is a
p-adic unit known modulo ``p**(prec - val)``.  A zero carries the absolute
precision ``prec`` to which it is known to vanish; the exact zero has
``prec = math.inf``.

Precision is never inflated: sums keep the smaller absolute precision,
products and quotients keep the smaller relative precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

DEFAULT_PREC = 32


class PrecisionError(ArithmeticError):
    """Raised when a computation runs out of p-adic digits."""


def vp(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicScalar:
    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p, unit, val, prec):
        # raw constructor, assumes normalized input; use _make otherwise
        self.p = p
        self.unit = unit
        self.val = val
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def _make(cls, p, n, v, prec):
        """Normalize the value ``n * p**v`` known modulo ``p**prec``."""
        if n == 0 or v >= prec:
            return cls.zero(p, prec)
        k = vp(n, p)
        v += k
        if v >= prec:
            return cls.zero(p, prec)
        if k:
            n //= p**k
        return cls(p, n % p ** (prec - v), v, prec)

    @classmethod
    def zero(cls, p, prec=math.inf):
        return cls(p, 0, prec, prec)

    @classmethod
    def from_rational(cls, q, p, prec=DEFAULT_PREC):
        """Embed an int or Fraction with ``prec`` relative digits."""
        _check_prime(p)
        q = Fraction(q)
        if q == 0:
            return cls.zero(p)
        v = vp(q, p)
        num = q.numerator // p ** max(v, 0)
        den = q.denominator // p ** max(-v, 0)
        mod = p**prec
        return cls(p, num * pow(den, -1, mod) % mod, v, v + prec)

    @classmethod
    def from_digits(cls, p, digits, valuation=0, precision=None):
        n = sum(d * p**i for i, d in enumerate(digits))
        if precision is None:
            precision = valuation + len(digits)
        return cls._make(p, n, valuation, precision)

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            # exact rationals never limit the precision of the other operand
            if self.prec == math.inf:
                rel = DEFAULT_PREC
            else:
                rel = max(1, self.prec - _safe_vp(other, self.p), self.rel)
            return PadicScalar.from_rational(other, self.p, rel)
        return NotImplemented

    # -- predicates and accessors ------------------------------------

    def is_zero(self):
        return self.unit == 0

    def is_exact_zero(self):
        return self.unit == 0 and self.prec == math.inf

    @property
    def rel(self):
        """Relative precision (number of known unit digits)."""
        return self.prec - self.val

    def valuation(self):
        return self.val

    def size(self):
        """The p-adic absolute value as a float (0.0 for zero)."""
        return 0.0 if self.is_zero() else float(self.p) ** (-self.val)

    def digits(self):
        """Base-p digits of the unit part, little-endian."""
        if self.is_zero():
            return []
        out, n = [], self.unit
        for _ in range(self.rel):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    def residue(self):
        if self.val < 0:
            raise ValueError("not integral")
        return 0 if self.val > 0 or self.is_zero() else self.unit % self.p

    def lift(self):
        """Integer representative of an integral element."""
        if self.is_zero():
            return 0
        if self.val < 0:
            raise ValueError("not integral")
        return self.unit * self.p**self.val

    def to_fraction(self):
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return other._reduce(prec)
        if other.is_zero():
            return self._reduce(prec)
        v = min(self.val, other.val)
        n = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PadicScalar._make(p, n, v, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicScalar(self.p, (-self.unit) % self.p**self.rel, self.val, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_zero() or other.is_zero():
            return PadicScalar.zero(p, min(self.prec + other.val, other.prec + self.val))
        rel = min(self.rel, other.rel)
        mod = p**rel
        return PadicScalar(p, self.unit * other.unit % mod, self.val + other.val,
                           self.val + other.val + rel)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of p-adic zero")
        mod = self.p**self.rel
        return PadicScalar(self.p, pow(self.unit, -1, mod), -self.val, -self.val + self.rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return PadicScalar.from_rational(1, self.p, max(self.rel, 1) if not self.is_zero() else DEFAULT_PREC)
        if self.is_zero():
            return PadicScalar.zero(self.p, self.prec + (k - 1) * self.val)
        mod = self.p**self.rel
        return PadicScalar(self.p, pow(self.unit, k, mod), k * self.val, k * self.val + self.rel)

    def _reduce(self, prec):
        if prec >= self.prec:
            return self
        if self.is_zero():
            return PadicScalar.zero(self.p, prec)
        return PadicScalar._make(self.p, self.unit, self.val, prec)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "0" if self.prec == math.inf else f"O({self.p}^{self.prec})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec})"

    # -- serialization -----------------------------------------------

    def to_json(self):
        return {
            "prime": self.p,
            "valuation": None if self.is_zero() else self.val,
            "digits": self.digits(),
            "precision": None if self.prec == math.inf else self.prec,
        }

    @classmethod
    def from_json(cls, d):
        prec = math.inf if d["precision"] is None else d["precision"]
        if d["valuation"] is None:
            return cls.zero(d["prime"], prec)
        return cls.from_digits(d["prime"], d["digits"], d["valuation"], prec)


class Residual(NamedTuple):
    """Largest p-adic size among some differences, with the precision behind it.

    ``size == 0.0`` means every difference vanished; ``digits`` is then the
    smallest absolute precision to which they are known to vanish.
    """

    size: float
    digits: float

    def vanishes(self, digits=0):
        return self.size == 0.0 and self.digits >= digits

    def agrees(self, digits, p):
        """True if the differences are below p^-digits, vanished or not."""
        if self.size == 0.0:
            return self.digits >= digits
        return self.size <= float(p) ** (-digits) * (1 + 1e-9)

    def to_json(self):
        return {"size": self.size, "digits": None if self.digits == math.inf else self.digits}


def size_of(x, p):
    """|x|_p for ints, Fractions and p-adic elements."""
    if isinstance(x, (int, Fraction)):
        return 0.0 if x == 0 else float(p) ** (-vp(x, p))
    return x.size()


def prec_of(x):
    return getattr(x, "prec", math.inf)


def residual_of(diffs, p):
    diffs = list(diffs)
    size = max((size_of(d, p) for d in diffs), default=0.0)
    digits = min((prec_of(d) for d in diffs), default=math.inf)
    return Residual(size, digits)


def _safe_vp(q, p):
    return 0 if q == 0 else vp(q, p)


def _check_prime(p):
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, math.isqrt(p) + 1, 2)):
        raise ValueError(f"p must be an odd prime, got {p}")


@lru_cache(maxsize=None)
def _teichmuller_int(a, p, prec):
    mod = p**prec
    x = a % p
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


def teichmuller(a, p, prec=DEFAULT_PREC):
    """The (p-1)-st root of unity in Z_p congruent to ``a`` mod p."""
    _check_prime(p)
    if a % p == 0:
        raise ValueError("Teichmuller lift of a multiple of p")
    return PadicScalar(p, _teichmuller_int(a % p, p, prec), 0, prec)


def log_one_unit(u):
    """p-adic logarithm of a principal unit ``u`` (``v_p(u - 1) >= 1``)."""
    x = u - 1
    p = u.p
    if x.is_zero():
        return PadicScalar.zero(p, x.prec)
    if x.val < 1:
        raise ValueError("log_one_unit needs u = 1 mod p")
    target = x.prec
    total = PadicScalar.zero(p)
    power = x
    k = 1
    # k*v - floor(log_p k) is nondecreasing, so the first k past the target
    # bounds every later term as well
    while k * x.val - _floor_log(k, p) < target:
        term = power / k
        total = total + term if k % 2 else total - term
        k += 1
        power = power * x
    return total._reduce(target)


def _floor_log(k, p):
    t = 0
    while k >= p:
        k //= p
        t += 1
    return t
