"""Scalar backends.

Two backends are supported. The exact one uses :class:`fractions.Fraction`
for real values and :class:`GaussianRational` for values with a nonzero
imaginary part. The float one uses :mod:`mpmath` at a configurable
precision and is only selected for groups whose character tables need
irrational cyclotomic numbers (for instance Z/3).
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational

import mpmath

DEFAULT_DPS = 64
DEFAULT_TOLERANCE = mpmath.mpf("1e-30")


def configure_precision(dps: int | None = None) -> int:
    """Set the working precision (decimal digits) of the float backend.

    ``ZMW_PRECISION`` in the environment wins over the argument.
    """
    env = os.environ.get("ZMW_PRECISION")
    if env:
        dps = int(env)
    if dps is None:
        dps = DEFAULT_DPS
    if dps < 15:
        raise ValueError(f"precision must be at least 15 digits, got {dps}")
    mpmath.mp.dps = dps
    return dps


configure_precision()


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @staticmethod
    def make(real, imag):
        """Return a Fraction when ``imag`` vanishes, else a GaussianRational."""
        if imag == 0:
            return Fraction(real)
        return GaussianRational(real, imag)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def _mp(self):
        return mpmath.mpc(to_mp(self.real), to_mp(self.imag))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return m + other
            return NotImplemented
        return GaussianRational.make(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return m - other
            return NotImplemented
        return GaussianRational.make(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return other - m
            return NotImplemented
        return GaussianRational.make(o.real - self.real, o.imag - self.imag)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return m * other
            return NotImplemented
        return GaussianRational.make(
            self.real * o.real - self.imag * o.imag,
            self.real * o.imag + self.imag * o.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return m / other
            return NotImplemented
        den = o.real * o.real + o.imag * o.imag
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational.make(
            (self.real * o.real + self.imag * o.imag) / den,
            (self.imag * o.real - self.real * o.imag) / den,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (mpmath.mpf, mpmath.mpc)):
                m = self._mp()
                return other / m
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational.make(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational.make(self.real, -self.imag)

    def __abs__(self):
        return mpmath.sqrt(self.real * self.real + self.imag * self.imag)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        sign = "+" if self.imag >= 0 else "-"
        return f"{self.real}{sign}{abs(self.imag)}i"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def real_part(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, GaussianRational):
        return x.real
    return mpmath.re(x)


def imag_part(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, GaussianRational):
        return x.imag
    return mpmath.im(x)


def conj(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.conjugate()


def abs2(x):
    """``x * conj(x)`` as a real number of the matching backend."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x) * x
    if isinstance(x, GaussianRational):
        return x.real * x.real + x.imag * x.imag
    return mpmath.re(x) ** 2 + mpmath.im(x) ** 2


def to_scalar(value, exact: bool = True):
    """Parse a JSON scalar: a number, a ``"p/q"`` string, or a ``[re, im]`` pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex value must be [re, im], got {value!r}")
        re, im = (to_scalar(v, exact) for v in value)
        if exact:
            return GaussianRational.make(re, im)
        return mpmath.mpc(re, im)
    if isinstance(value, bool):
        raise ValueError("boolean is not a number")
    if exact:
        if isinstance(value, float):
            # floats in model files are taken at face value (0.5 -> 1/2)
            return Fraction(str(value))
        return Fraction(value)
    if isinstance(value, str) and "/" in value:
        p, q = value.split("/")
        return mpmath.mpf(p) / mpmath.mpf(q)
    return mpmath.mpf(value)


def to_mp(x):
    """Convert any backend value to an mpmath number."""
    if isinstance(x, (int, Fraction)):
        return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
    if isinstance(x, GaussianRational):
        return mpmath.mpc(to_mp(x.real), to_mp(x.imag))
    return x


def close(a, b, tol=None) -> bool:
    """Exact equality for exact values, tolerance comparison otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    if tol is None:
        tol = DEFAULT_TOLERANCE
    return abs(to_mp(a) - to_mp(b)) <= tol


def is_zero(x, tol=None) -> bool:
    return close(x, 0, tol)


def simplify(x):
    """Collapse mp values with negligible imaginary part to mpf."""
    if isinstance(x, mpmath.mpc) and abs(x.imag) <= DEFAULT_TOLERANCE:
        return mpmath.mpf(x.real)
    return x


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)`` as an exact product."""
    result = Fraction(1) if is_exact(a) else mpmath.mpf(1)
    for i in range(n):
        result = result * (a + i)
    return result


def render(x) -> str:
    """Render a value for tables: ``p/q`` for rationals, decimals otherwise."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        return str(x)
    x = simplify(x)
    if isinstance(x, mpmath.mpc):
        return f"{mpmath.nstr(x.real, mpmath.mp.dps)}{'+' if x.imag >= 0 else '-'}{mpmath.nstr(abs(x.imag), mpmath.mp.dps)}i"
    return mpmath.nstr(x, mpmath.mp.dps)


def to_json_value(x):
    """JSON-friendly rendering: ``"p/q"`` strings or ``[re, im]`` pairs."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, GaussianRational):
        return [str(x.real), str(x.imag)]
    x = simplify(x)
    if isinstance(x, mpmath.mpc):
        return [mpmath.nstr(x.real, mpmath.mp.dps), mpmath.nstr(x.imag, mpmath.mp.dps)]
    return mpmath.nstr(x, mpmath.mp.dps)


__all__ = [
    "GaussianRational",
    "Rational",
    "abs2",
    "close",
    "configure_precision",
    "conj",
    "imag_part",
    "is_exact",
    "is_zero",
    "pochhammer",
    "real_part",
    "render",
    "simplify",
    "to_json_value",
    "to_mp",
    "to_scalar",
]
