"""Arithmetic in K_n = Q_p(zeta_{p^(n+1)}).

Elements are stored as ``p**val * sum(c_i * zeta**i for i < e)`` with
``e = p**n * (p - 1)`` and integer digits ``c_i`` known modulo
``p**(prec - val)``.  The zeta-power basis and the pi-power basis
(``pi = zeta - 1``) span the same Z_p-lattice, so precision bookkeeping is
identical in both; the zeta basis makes Galois action a permutation and
multiplication a cyclic convolution, and pi-basis coordinates are produced on
demand for valuations and serialization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .padic_core import DEFAULT_PREC, PadicScalar, PrecisionError, _check_prime, vp


# -- integer polynomial helpers -----------------------------------------


def _kmul(a, b):
    """Product of two polynomials with nonnegative integer coefficients.

    Uses Kronecker substitution so the work happens in one big-int multiply.
    """
    if not a or not b:
        return []
    bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    nb = (bits + 7) // 8
    A = int.from_bytes(b"".join(x.to_bytes(nb, "little") for x in a), "little")
    B = int.from_bytes(b"".join(x.to_bytes(nb, "little") for x in b), "little")
    n = len(a) + len(b) - 1
    data = (A * B).to_bytes(n * nb, "little")
    return [int.from_bytes(data[i * nb:(i + 1) * nb], "little") for i in range(n)]


@lru_cache(maxsize=None)
def _binom_row(h, s, mod):
    # coefficients of (X + s)^h modulo mod
    row = []
    c = 1
    for k in range(h + 1):
        row.append(c * pow(s, h - k, mod) % mod)
        c = c * (h - k) // (k + 1)
    return tuple(row)


def _taylor_shift(c, s, mod):
    """Coefficients of ``sum c_i (X + s)^i`` modulo ``mod``."""
    n = len(c)
    if n <= 24:
        b = []
        for ci in reversed(c):
            nb = [0] * (len(b) + 1)
            for k, bk in enumerate(b):
                nb[k + 1] += bk
                nb[k] += s * bk
            nb[0] += ci
            b = [x % mod for x in nb]
        return b + [0] * (n - len(b))
    h = n // 2
    lo = _taylor_shift(c[:h], s, mod)
    hi = _taylor_shift(c[h:], s, mod)
    prod = _kmul(list(_binom_row(h, s, mod)), hi)
    out = lo + [0] * (n - h)
    for i, x in enumerate(prod[:n]):
        out[i] += x
    return [x % mod for x in out]


# -- field context --------------------------------------------------------


class FieldContext:
    """The field K_n for a fixed prime and working precision W."""

    def __init__(self, p, n, prec=DEFAULT_PREC):
        _check_prime(p)
        if n < 0:
            raise ValueError("level must be >= 0")
        self.p = p
        self.n = n
        self.prec = prec
        self.pn = p**n
        self.q = p ** (n + 1)
        self.e = self.pn * (p - 1)

    def __repr__(self):
        return f"K_{self.n}(p={self.p}, W={self.prec})"

    def __reduce__(self):
        return (field, (self.p, self.n, self.prec))

    # reduction of a length-q coefficient list by Phi_q(zeta) = 0
    def _reduce_phi(self, out):
        e, pn = self.e, self.pn
        tail = out[e:self.q]
        if any(tail):
            for k in range(self.p - 1):
                blk = out[k * pn:(k + 1) * pn]
                out[k * pn:(k + 1) * pn] = [a - t for a, t in zip(blk, tail)]
        return out[:e]

    def _fold(self, c):
        q = self.q
        if len(c) <= q:
            out = list(c) + [0] * (q - len(c))
        else:
            out = list(c[:q])
            for i, x in enumerate(c[q:]):
                out[i] += x
        return self._reduce_phi(out)

    def eisenstein(self):
        """Coefficients of E_n(X) = Phi_{p^(n+1)}(1 + X), constant term first."""
        coeffs = [0] * (self.e + 1)
        for k in range(self.p):
            h = k * self.pn
            c = 1
            for i in range(h + 1):
                coeffs[i] += c
                c = c * (h - i) // (i + 1)
        return coeffs

    # -- constructors -------------------------------------------------

    def zero(self, prec=math.inf):
        return CycloElement(self, None, prec, prec)

    def one(self, prec=None):
        return self.scalar(1, prec)

    def scalar(self, x, prec=None):
        """Embed an int, Fraction or PadicScalar."""
        if isinstance(x, PadicScalar):
            if x.p != self.p:
                raise ValueError("prime mismatch")
            if x.is_zero():
                return self.zero(x.prec)
            return CycloElement(self, (x.unit,) + (0,) * (self.e - 1), x.val, x.prec)
        return self.scalar(PadicScalar.from_rational(x, self.p, self.prec if prec is None else prec))

    def zeta(self, k=1, order=None, prec=None):
        """The root of unity zeta_order**k, ``order`` a power of p up to q.

        Roots of unity are compatible: zeta_{p^j} = zeta_q**(q / p^j).
        """
        order = self.q if order is None else order
        if self.q % order:
            raise ValueError(f"zeta of order {order} not in {self}")
        idx = (k % order) * (self.q // order)
        return self.monomial(idx, prec)

    def monomial(self, idx, prec=None):
        prec = self.prec if prec is None else prec
        out = [0] * self.q
        out[idx % self.q] = 1
        return CycloElement._make(self, self._reduce_phi(out), 0, prec)

    def pi(self, prec=None):
        return self.zeta(1, prec=prec) - 1

    def from_zeta_coeffs(self, coeffs, val=0, prec=None):
        """Element with given integer coordinates in the zeta-power basis."""
        prec = self.prec + val if prec is None else prec
        c = list(coeffs)
        if len(c) > self.e:
            c = self._fold(c)
        c += [0] * (self.e - len(c))
        return CycloElement._make(self, c, val, prec)

    def from_pi_coeffs(self, coeffs):
        """Element from PadicScalar (or rational) coordinates in the pi basis."""
        coeffs = [c if isinstance(c, PadicScalar) else PadicScalar.from_rational(c, self.p, self.prec)
                  for c in coeffs]
        coeffs += [PadicScalar.zero(self.p)] * (self.e - len(coeffs))
        prec = min(c.prec for c in coeffs)
        nz = [c for c in coeffs if not c.is_zero()]
        if not nz:
            return self.zero(prec)
        v = min(c.val for c in nz)
        mod = self.p ** (prec - v)
        ints = [0 if c.is_zero() else c.unit * self.p ** (c.val - v) % mod for c in coeffs]
        return CycloElement._make(self, _taylor_shift(ints, mod - 1, mod), v, prec)

    def sum_roots(self, terms, prec=None):
        """sum(w * zeta_q**k for k, w in terms) with integer or PadicScalar weights."""
        prec = self.prec if prec is None else prec
        out = [0] * self.q
        v = 0
        items = []
        for k, w in terms:
            if not isinstance(w, PadicScalar):
                w = PadicScalar.from_rational(w, self.p, prec)
            if w.is_zero():
                prec = min(prec, w.prec)
                continue
            items.append((k, w))
            v = min(v, w.val)
            prec = min(prec, w.prec)
        for k, w in items:
            out[k % self.q] += w.unit * self.p ** (w.val - v)
        return CycloElement._make(self, self._reduce_phi(out), v, prec)


@lru_cache(maxsize=None)
def field(p, n, prec=DEFAULT_PREC):
    """Cached FieldContext keyed by (p, n, W)."""
    return FieldContext(p, n, prec)


# -- elements -------------------------------------------------------------


class CycloElement:
    __slots__ = ("ctx", "coeffs", "val", "prec")

    def __init__(self, ctx, coeffs, val, prec):
        self.ctx = ctx
        self.coeffs = coeffs
        self.val = val
        self.prec = prec

    @staticmethod
    def _make(ctx, c, v, prec):
        if prec <= v:
            return ctx.zero(prec)
        p = ctx.p
        mod = p ** (prec - v)
        c = [x % mod for x in c]
        g = math.gcd(*c)
        if g == 0:
            return ctx.zero(prec)
        k = 0
        while g % p == 0:
            g //= p
            k += 1
        if k:
            pk = p**k
            c = [x // pk for x in c]
            v += k
        return CycloElement(ctx, tuple(c), v, prec)

    # -- basic accessors ------------------------------------------------

    def is_zero(self):
        return self.coeffs is None

    @property
    def rel(self):
        return self.prec - self.val

    @property
    def level(self):
        return self.ctx.n

    def shifted(self, k):
        """Multiply by p**k exactly."""
        if self.is_zero():
            return CycloElement(self.ctx, None, self.prec + k, self.prec + k)
        return CycloElement(self.ctx, self.coeffs, self.val + k, self.prec + k)

    def reduce(self, prec):
        """Forget digits beyond absolute precision ``prec``."""
        if prec >= self.prec:
            return self
        if self.is_zero():
            return self.ctx.zero(prec)
        return CycloElement._make(self.ctx, list(self.coeffs), self.val, prec)

    def _representative(self, extra):
        # the same digits regarded as known to `extra` more places; only used
        # where the caller re-caps the result at a provable precision
        if self.is_zero():
            return self
        return CycloElement(self.ctx, self.coeffs, self.val, self.prec + extra)

    def zeta_coeffs(self):
        """Coordinates in the zeta-power basis as PadicScalars."""
        p = self.ctx.p
        if self.is_zero():
            return [PadicScalar.zero(p, self.prec)] * self.ctx.e
        return [PadicScalar._make(p, c, self.val, self.prec) for c in self.coeffs]

    def _pi_ints(self):
        return _taylor_shift(list(self.coeffs), 1, self.ctx.p ** self.rel)

    def pi_coeffs(self):
        """Coordinates in the pi-power basis, pi = zeta - 1."""
        p = self.ctx.p
        if self.is_zero():
            return [PadicScalar.zero(p, self.prec)] * self.ctx.e
        return [PadicScalar._make(p, b, self.val, self.prec) for b in self._pi_ints()]

    def pi_valuation(self):
        """Valuation in units of v_pi, so that v_pi(p) = e."""
        if self.is_zero():
            raise ValueError("pi-valuation of zero")
        p, e = self.ctx.p, self.ctx.e
        best = None
        cands = set()
        for i, b in enumerate(self._pi_ints()):
            w = i + e * (vp(b, p) if b else self.rel)
            cands.add(w)
            if best is None or w < best:
                best = w
        assert best < e * self.rel, "unit lattice element with no unit pi-coordinate"
        return e * self.val + best

    def valuation(self):
        """p-adic valuation as a Fraction (v_pi / e)."""
        if self.is_zero():
            return self.prec
        return Fraction(self.pi_valuation(), self.ctx.e)

    def size(self):
        if self.is_zero():
            return 0.0
        return float(self.ctx.p) ** (-float(self.valuation()))

    def is_rational(self):
        """True if the element lies in Q_p to its precision."""
        return self.is_zero() or not any(self.coeffs[1:])

    def to_scalar(self):
        """The Q_p-part (zeta^0 coordinate) as a PadicScalar."""
        p = self.ctx.p
        if self.is_zero():
            return PadicScalar.zero(p, self.prec)
        return PadicScalar._make(p, self.coeffs[0], self.val, self.prec)

    def residual_in_subfield(self):
        """Largest size of the coordinates outside Q_p(zeta_{p^n})."""
        if self.is_zero():
            return 0.0
        p = self.ctx.p
        off = [c for i, c in enumerate(self.coeffs) if i % p and c]
        if not off:
            return 0.0
        return float(p) ** (-(self.val + vp(math.gcd(*off), p)))

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.ctx is not self.ctx:
                if other.ctx.p != self.ctx.p:
                    raise ValueError("prime mismatch")
                if other.ctx.prec != self.ctx.prec and other.ctx.n == self.ctx.n:
                    raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
                if other.ctx.n < self.ctx.n:
                    return other.embed(self.ctx.n)
            return other
        if isinstance(other, PadicScalar):
            return self.ctx.scalar(other)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ctx.zero()
            rel = max(self.ctx.prec, 1)
            if self.prec != math.inf:
                rel = max(rel, self.prec - vp(Fraction(other), self.ctx.p), self.rel)
            return self.ctx.scalar(other, rel)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, CycloElement) and other.ctx.n > self.ctx.n:
            return self.embed(other.ctx.n) + other
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return other.reduce(prec)
        if other.is_zero():
            return self.reduce(prec)
        v = min(self.val, other.val)
        if v >= prec:
            return self.ctx.zero(prec)
        a, b = self.coeffs, other.coeffs
        if self.val != v:
            s = self.ctx.p ** (self.val - v)
            a = [x * s for x in a]
        if other.val != v:
            s = self.ctx.p ** (other.val - v)
            b = [x * s for x in b]
        return CycloElement._make(self.ctx, [x + y for x, y in zip(a, b)], v, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        mod = self.ctx.p ** self.rel
        return CycloElement(self.ctx, tuple((-x) % mod for x in self.coeffs), self.val, self.prec)

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
        if isinstance(other, PadicScalar):
            return self._scale(other)
        if isinstance(other, (int, Fraction)):
            return self._scale(PadicScalar.from_rational(other, self.ctx.p, max(self.ctx.prec, self.rel if not self.is_zero() else 0) + 2))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.ctx.n > self.ctx.n:
            return self.embed(other.ctx.n) * other
        if self.is_zero() or other.is_zero():
            return self.ctx.zero(min(self.prec + other.val, other.prec + self.val))
        rel = min(self.rel, other.rel)
        mod = self.ctx.p**rel
        a = [x % mod for x in self.coeffs] if self.rel > rel else list(self.coeffs)
        b = [x % mod for x in other.coeffs] if other.rel > rel else list(other.coeffs)
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        c = self.ctx._fold(_kmul(a, b))
        v = self.val + other.val
        return CycloElement._make(self.ctx, c, v, v + rel)

    __rmul__ = __mul__

    def _scale(self, s):
        if s.p != self.ctx.p:
            raise ValueError("prime mismatch")
        if self.is_zero() or s.is_zero():
            return self.ctx.zero(min(self.prec + s.val, s.prec + self.val))
        rel = min(self.rel, s.rel)
        mod = self.ctx.p**rel
        u = s.unit % mod
        v = self.val + s.val
        return CycloElement(self.ctx, tuple(x * u % mod for x in self.coeffs), v, v + rel)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return self.ctx.one(max(self.rel, 1) if not self.is_zero() else None) if result is None else result

    def _unit_inverse(self):
        # Newton iteration y <- y + y(1 - u y); the pi-adic error squares each step
        p, rel = self.ctx.p, self.rel
        mod = p**rel
        a0 = sum(self.coeffs) % mod
        if a0 % p == 0:
            raise ValueError("not a unit")
        y = self.ctx.scalar(PadicScalar(p, pow(a0, -1, mod), 0, rel))
        one = self.ctx.one(rel)
        for _ in range(2 * (self.ctx.e * rel).bit_length() + 4):
            r = one - self * y
            if r.is_zero():
                return y.reduce(rel)
            y = y + y * r
        raise PrecisionError("Newton inversion did not converge")

    def inverse(self):
        """Multiplicative inverse, capped at its provable absolute precision."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in K_n")
        e = self.ctx.e
        v = self.pi_valuation()
        # perturbing x by p^P O moves 1/x by p^P / x^2
        cap = math.floor(Fraction(e * self.prec - 2 * v, e))
        unit = CycloElement(self.ctx, self.coeffs, 0, self.rel + 2)
        vu = v - e * self.val
        if vu == 0:
            inv = unit._unit_inverse()
        else:
            pw = self.ctx.pi(prec=unit.rel + 2) ** (e - vu)
            d = unit * pw
            if d.is_zero() or d.val != 1:
                raise PrecisionError("inverse: precision exhausted")
            inv = (pw * d.shifted(-1)._unit_inverse()).shifted(-1)
        inv = inv.shifted(-self.val)
        if inv.prec < cap:
            raise PrecisionError("inverse: guard digits insufficient")
        return inv.reduce(cap)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PadicScalar):
            return self._scale(other.inverse())
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"O(p^{self.prec}) in {self.ctx}"
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c][:4]
        more = " + ..." if sum(1 for c in self.coeffs if c) > 4 else ""
        return f"{self.ctx.p}^{self.val}*({' + '.join(terms)}{more}) + O(p^{self.prec})"

    # -- field structure ------------------------------------------------------

    def galois(self, b):
        """Apply sigma_b : zeta -> zeta**b."""
        ctx = self.ctx
        if b % ctx.p == 0:
            raise ValueError("Galois exponent must be prime to p")
        if self.is_zero():
            return self
        q = ctx.q
        b %= q
        if b == 1:
            return self
        out = [0] * q
        for i, x in enumerate(self.coeffs):
            out[b * i % q] = x
        return CycloElement._make(ctx, ctx._reduce_phi(out), self.val, self.prec)

    def embed(self, level):
        """Image in K_level for level >= self.level."""
        ctx = self.ctx
        if level == ctx.n:
            return self
        if level < ctx.n:
            raise ValueError("can only embed upward")
        big = field(ctx.p, level, ctx.prec)
        if self.is_zero():
            return big.zero(self.prec)
        step = ctx.p ** (level - ctx.n)
        out = [0] * big.e
        for i, x in enumerate(self.coeffs):
            out[i * step] = x
        return CycloElement(big, tuple(out), self.val, self.prec)

    def descend(self, level):
        """Re-express an element of the subfield K_level; raises if it is not there."""
        ctx = self.ctx
        if level == ctx.n:
            return self
        step = ctx.p ** (ctx.n - level)
        small = field(ctx.p, level, ctx.prec)
        if self.is_zero():
            return small.zero(self.prec)
        if any(c for i, c in enumerate(self.coeffs) if i % step):
            raise ValueError("element does not lie in the subfield")
        return CycloElement._make(small, list(self.coeffs[::step]), self.val, self.prec)

    def norm_product(self):
        """Product of the p conjugates over K_{n-1}, still at level n."""
        ctx = self.ctx
        if ctx.n < 1:
            raise ValueError("norm_to_sublevel needs level >= 1")
        out = self
        for k in range(1, ctx.p):
            out = out * self.galois(1 + k * ctx.pn)
        return out

    def norm_to_sublevel(self):
        """N^n_{n-1}(x), landing in K_{n-1}."""
        prod = self.norm_product()
        if prod.residual_in_subfield() != 0.0:
            raise ValueError("norm did not land in the subfield")
        return prod.descend(self.ctx.n - 1)

    def to_json(self):
        return {"p": self.ctx.p, "level": self.ctx.n,
                "coeffs": [c.to_json() for c in self.pi_coeffs()]}

    @classmethod
    def from_json(cls, d, prec=DEFAULT_PREC):
        ctx = field(d["p"], d["level"], prec)
        return ctx.from_pi_coeffs([PadicScalar.from_json(c) for c in d["coeffs"]])


def _floor_log(k, p):
    t = 0
    while k >= p:
        k //= p
        t += 1
    return t


def _div_int(x, j):
    """x / j for a nonzero integer j, exact up to x's precision."""
    p = x.ctx.p
    t = vp(j, p)
    if x.is_zero():
        return x.shifted(-t)
    mod = p**x.rel
    inv = pow(j // p**t, -1, mod)
    return CycloElement(x.ctx, tuple(c * inv % mod for c in x.coeffs), x.val - t, x.prec - t)


def _log_series(w, target):
    """log(1 + w) to absolute precision ``target`` for v_pi(w) > e/(p-1)."""
    ctx = w.ctx
    p, e = ctx.p, ctx.e
    if w.is_zero():
        return ctx.zero(w.prec)
    vw = w.pi_valuation()
    bound = e * target

    def f(j):
        return j * vw - e * _floor_log(j, p)

    # log(1 + w) is an isometry on the disc, so the series may run on a
    # representative of w with guard digits and be capped at w's precision
    last = 1
    while not (f(last) >= bound and f(p ** (_floor_log(last, p) + 1)) >= bound):
        last += 1
    cap = min(w.prec, target)
    w = w._representative(_floor_log(last, p) + 1)
    total = ctx.zero()
    power = w
    j = 1
    while True:
        nxt = p ** (_floor_log(j, p) + 1)
        if f(j) >= bound and f(nxt) >= bound:
            break
        term = power if j == 1 else _div_int(power, j)
        total = total + term if j % 2 else total - term
        j += 1
        power = power * w
    return total.reduce(cap)


def iwasawa_log(x):
    """Iwasawa logarithm (log p = 0) of a nonzero element of K_n."""
    ctx = x.ctx
    p, e = ctx.p, ctx.e
    if x.is_zero():
        raise ValueError("log of zero")
    v = x.pi_valuation()
    cap = x.prec - math.ceil(Fraction(v, e))
    g = math.gcd(v, e)
    a, b = e // g, v // g
    # x is only known mod p^prec, but log is 1-Lipschitz on units, so any
    # representative gives the same answer to `cap`; working on one with guard
    # digits absorbs the division by the exponent and the series' 1/j losses
    guard = 2 * _floor_log(e * max(cap, 1), p) + vp(a, p) + ctx.n + 8
    xr = x._representative(guard)
    y = (xr**a).shifted(-b)
    if y.val != 0:
        raise PrecisionError("normalization to a unit failed")
    z = y ** (p - 1)
    expo = a * (p - 1)
    while True:
        w = z - 1
        if w.is_zero() or w.pi_valuation() > ctx.pn:
            break
        if expo > e * p ** (ctx.n + 3):
            raise PrecisionError(f"log did not reach convergence disc (v_pi(z-1)={w.pi_valuation()})")
        z = z**p
        expo *= p
    t = vp(expo, p)
    target = cap + t + 1
    lg = _log_series(w.reduce(min(w.prec, target)) if not w.is_zero() else w, target)
    res = _div_int(lg, expo)
    if res.prec < cap:
        raise PrecisionError(f"log: only {res.prec} digits available, need {cap}")
    return res.reduce(cap)
