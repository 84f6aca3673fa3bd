"""Double-double arithmetic with a tracked error bound.

An HPReal is the unevaluated sum hi + lo of two doubles (~31 significant
digits) together with ``err``, an absolute bound on the distance between
hi + lo and the intended real value.  ``err`` only grows under arithmetic,
so any HPReal result carries a certificate of its own accuracy.

Floats and ints fed into the arithmetic are treated as exact inputs.
Near the bottom of the double exponent range the lo component (and
eventually hi) underflows; err absorbs those losses, so values below
~1e-308 come back as 0 with an err that still bounds the truth.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split constant

# Relative rounding bound for one renormalized double-double operation.
# True bound is ~2**-104; keep slack for the multi-step div/exp/log kernels.
_EPS = 2.0 ** -98

# products/quotients that land under the normal-double floor lose all
# precision; the true magnitude is then provably below this, which goes
# into err so the bound stays honest through underflow
_UNDERFLOW_FLOOR = 4.5e-308


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # assumes |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


class HPReal:
    """hi + lo double-double value with absolute error bound ``err``."""

    __slots__ = ("hi", "lo", "err")

    def __init__(self, hi: float, lo: float = 0.0, err: float = 0.0):
        if lo == 0.0:
            self.hi = float(hi)
            self.lo = 0.0
        else:
            s, e = _two_sum(float(hi), float(lo))
            self.hi = s
            self.lo = e
        self.err = float(err)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(value: int) -> "HPReal":
        if -9007199254740992 <= value <= 9007199254740992:  # |v| <= 2^53: exact
            return HPReal(float(value))
        hi = float(value)
        lo = float(value - int(hi))
        rem = value - int(hi) - int(lo)
        return HPReal(hi, lo, abs(float(rem)) * (1.0 + 1e-15))

    @staticmethod
    def from_fraction(value: Fraction) -> "HPReal":
        hi = float(value)
        r = value - Fraction(hi)
        lo = float(r)
        rem = r - Fraction(lo)
        err = abs(float(rem)) * (1.0 + 1e-15) if rem else 0.0
        return HPReal(hi, lo, err)

    # -- conversions --------------------------------------------------

    def __float__(self) -> float:
        return self.hi + self.lo

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def decimal_string(self, digits: int = 25) -> str:
        """Round hi + lo to ``digits`` significant decimal digits."""
        with localcontext() as ctx:
            ctx.prec = digits + 15
            d = Decimal(self.hi) + Decimal(self.lo)
            ctx.prec = digits
            return str(+d)

    def __repr__(self) -> str:
        return f"HPReal({self.decimal_string()}, err={self.err:.3e})"

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "HPReal":
        if isinstance(other, HPReal):
            return other
        if isinstance(other, int):
            return HPReal.from_int(other)
        if isinstance(other, float):
            return HPReal(other)
        if isinstance(other, Fraction):
            return HPReal.from_fraction(other)
        return NotImplemented

    def __add__(self, other) -> "HPReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        hi, lo = _quick_two_sum(s, e)
        err = self.err + o.err + _EPS * abs(hi) + 5e-321
        return HPReal(hi, lo, err)

    __radd__ = __add__

    def __neg__(self) -> "HPReal":
        return HPReal(-self.hi, -self.lo, self.err)

    def __sub__(self, other) -> "HPReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other) -> "HPReal":
        return (-self).__add__(other)

    def __mul__(self, other) -> "HPReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        hi, lo = _quick_two_sum(p, e)
        a = abs(self.hi) + abs(self.lo)
        b = abs(o.hi) + abs(o.lo)
        err = self.err * b + o.err * a + self.err * o.err + _EPS * abs(hi) + 5e-321
        if abs(hi) < _UNDERFLOW_FLOOR and a != 0.0 and b != 0.0:
            err += _UNDERFLOW_FLOOR
        return HPReal(hi, lo, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "HPReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.hi == 0.0 and o.lo == 0.0:
            raise ZeroDivisionError("HPReal division by zero")
        q1 = self.hi / o.hi
        r = self - o * HPReal(q1)
        q2 = (r.hi + r.lo) / o.hi
        r2 = r - o * HPReal(q2)
        q3 = (r2.hi + r2.lo) / o.hi
        hi, lo = _quick_two_sum(q1, q2)
        lo += q3
        hi, lo = _quick_two_sum(hi, lo)
        qabs = abs(hi) + abs(lo)
        babs = abs(o.hi) + abs(o.lo)
        err = (self.err + qabs * o.err) / babs * 1.01 + _EPS * qabs + 5e-321
        if abs(hi) < _UNDERFLOW_FLOOR and (self.hi != 0.0 or self.lo != 0.0):
            err += _UNDERFLOW_FLOOR
        return HPReal(hi, lo, err)

    def __rtruediv__(self, other) -> "HPReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def abs(self) -> "HPReal":
        return -self if self.hi < 0 else HPReal(self.hi, self.lo, self.err)

    # -- comparisons (on hi + lo, ignoring err) ------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        d = self - o
        if d.hi > 0:
            return 1
        if d.hi < 0:
            return -1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.hi + self.lo)

    # -- elementary functions ------------------------------------------

    def sqrt(self) -> "HPReal":
        if self.hi < 0:
            raise ValueError("HPReal sqrt of negative value")
        if self.hi == 0 and self.lo == 0:
            return HPReal(0.0, 0.0, math.sqrt(self.err))
        y = HPReal(math.sqrt(self.hi))
        y = (y + self / y) * 0.5
        y = (y + self / y) * 0.5
        rel_in = self.err / (self.hi + self.lo)
        err = abs(float(y)) * (0.5 * rel_in + 4 * _EPS)
        return HPReal(y.hi, y.lo, err)

    def pow_int(self, k: int) -> "HPReal":
        if k < 0:
            return HPReal(1.0) / self.pow_int(-k)
        result = HPReal(1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exp(self) -> "HPReal":
        a = self.hi + self.lo
        if a > 709.0:
            raise OverflowError("HPReal exp overflow")
        if a < -745.0:
            return HPReal(0.0, 0.0, 5e-324)
        m = round(a / math.log(2.0))
        r = self - LN2 * m
        term = HPReal(1.0)
        total = HPReal(1.0)
        i = 1
        while True:
            term = term * r / i
            total = total + term
            if abs(term.hi) <= 2.0 ** -110 * abs(total.hi) or i > 40:
                break
            i += 1
        hi = math.ldexp(total.hi, m)
        lo = math.ldexp(total.lo, m)
        res = abs(hi)
        err = res * (self.err * (1.0 + self.err) + 16 * _EPS)
        return HPReal(hi, lo, err)

    def log(self) -> "HPReal":
        v = self.hi + self.lo
        if v <= 0:
            raise ValueError("HPReal log of non-positive value")
        # frexp reduction keeps the Newton iterate's exp() in range
        _, e = math.frexp(self.hi)
        f = HPReal(math.ldexp(self.hi, -e), math.ldexp(self.lo, -e))
        y = HPReal(math.log(f.hi + f.lo))
        for _ in range(2):
            ey = y.exp()
            y = y + f / ey - 1.0
        result = y + LN2 * e
        rel_in = self.err / v
        err = rel_in * 1.01 + _EPS * (abs(float(result)) + 1.0)
        return HPReal(result.hi, result.lo, err)


LN2 = HPReal(0.6931471805599453, 2.3190468138462996e-17)
PI = HPReal(3.141592653589793, 1.2246467991473532e-16)
TWO_PI = HPReal(6.283185307179586, 2.4492935982947064e-16)


def hp(value) -> HPReal:
    """Lift an int, float, or Fraction to HPReal."""
    r = HPReal._coerce(value)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {type(value)!r} to HPReal")
    return r
