"""Exact truncated q-expansions over the rationals.

A series is stored as ``q^alpha * (c_0 + c_1 q + ... + c_{prec-1} q^{prec-1})``
with exact rational ``alpha`` and exact rational coefficients.  ``prec``
counts the known integer-step coefficients; no operation fabricates
precision beyond what its operands supply.  The leading stored coefficient
is nonzero unless the series is the canonical zero, which keeps an empty
coefficient tuple but remembers how many slots are known to vanish.

Constructors are provided for the classical level-1 ingredients used by the
rest of the package: eta powers, the Eisenstein series E2/E4/E6, the
discriminant, 1/j, the integer series g with 1/j = q(1 + q g(q)), rational
powers of unit series, the weight-raising derivative D = q d/dq - (k/12) E2,
and floating-point evaluation at a point of the upper half-plane.

All values are immutable and all functions are pure, so concurrent use
needs no synchronization.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import (
    IncompatibleAlphaError,
    NonUnitError,
    PrecisionError,
    PreconditionError,
)

Rational = Union[int, Fraction]


class QExp:
    """One truncated expansion q^alpha * sum(c_m q^m, m < prec)."""

    __slots__ = ("alpha", "coeffs", "prec")

    alpha: Fraction
    coeffs: tuple[Fraction, ...]
    prec: int

    def __init__(self, alpha: Rational, coeffs: Sequence[Rational], prec: int | None = None):
        alpha = Fraction(alpha)
        cs = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if prec < 0:
            raise ValueError("prec must be non-negative")
        if len(cs) > prec:
            cs = cs[:prec]
        # A short coefficient list means the remaining slots are known zeros.
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        if k == len(cs):
            object.__setattr__(self, "alpha", alpha)
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "prec", prec)
        else:
            object.__setattr__(self, "alpha", alpha + k)
            object.__setattr__(self, "coeffs", tuple(cs[k:]))
            object.__setattr__(self, "prec", prec - k)

    def __setattr__(self, name, value):
        raise AttributeError("QExp is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def horizon(self) -> Fraction:
        """First exponent at which nothing is known."""
        return self.alpha + self.prec

    @classmethod
    def zero(cls, prec: int, alpha: Rational = 0) -> "QExp":
        return cls(alpha, [], prec)

    @classmethod
    def constant(cls, value: Rational, prec: int) -> "QExp":
        return cls(0, [value], prec)

    @classmethod
    def one(cls, prec: int) -> "QExp":
        return cls(0, [1], prec)

    @classmethod
    def monomial(cls, alpha: Rational, prec: int, value: Rational = 1) -> "QExp":
        return cls(alpha, [value], prec)

    def coefficient(self, m: int) -> Fraction:
        """m-th stored coefficient (coefficient of q^(alpha+m))."""
        if m >= self.prec:
            raise PrecisionError(f"coefficient {m} beyond known precision {self.prec}")
        if m < 0 or m >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[m]

    def coeff_of_exponent(self, e: Rational) -> Fraction:
        """Coefficient of q^e.  Exponents below the stored window or off the
        integer grid report zero; exponents at or past the horizon raise."""
        e = Fraction(e)
        if not self.is_zero:
            d = e - self.alpha
            if d.denominator == 1 and 0 <= d < self.prec:
                return self.coefficient(int(d))
        if e >= self.horizon:
            raise PrecisionError(f"exponent {e} at or beyond horizon {self.horizon}")
        return Fraction(0)

    def terms(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Yield (exponent, coefficient) for every nonzero known term."""
        for m, c in enumerate(self.coeffs):
            if c:
                yield self.alpha + m, c

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExp):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return (self.alpha, self.coeffs, self.prec) == (other.alpha, other.coeffs, other.prec)

    def __hash__(self) -> int:
        if self.is_zero:
            return hash("QExp:zero")
        return hash((self.alpha, self.coeffs, self.prec))

    def __repr__(self) -> str:
        head = ", ".join(f"q^{self.alpha + m}*{c}" for m, c in enumerate(self.coeffs[:4]))
        tail = ", ..." if len(self.coeffs) > 4 else ""
        return f"QExp({head}{tail}; prec={self.prec})"

    # -- ring operations -------------------------------------------------

    def _add_impl(self, other: "QExp", sign: int) -> "QExp":
        if self.is_zero and other.is_zero:
            h = min(self.horizon, other.horizon)
            a = max(self.alpha, other.alpha)
            return QExp.zero(max(0, math.ceil(h - a)), a)
        if self.is_zero or other.is_zero:
            zero, live = (self, other) if self.is_zero else (other, self)
            live_scaled = live if (live is self or sign == 1) else live * sign
            n = min(live.prec, math.ceil(zero.horizon - live.alpha))
            if n < 0:
                n = 0
            return QExp(live_scaled.alpha, live_scaled.coeffs[:n], n)
        d = other.alpha - self.alpha
        if d.denominator != 1:
            raise IncompatibleAlphaError(
                f"cannot add series with exponent offset {d} not in Z"
            )
        d = int(d)
        if d < 0:
            base, shifted, shift = other, self, -d
            s_base, s_shift = sign, 1
        else:
            base, shifted, shift = self, other, d
            s_base, s_shift = 1, sign
        prec = min(base.prec, shift + shifted.prec)
        out = [Fraction(0)] * prec
        for i, c in enumerate(base.coeffs[:prec]):
            out[i] += s_base * c
        for i, c in enumerate(shifted.coeffs):
            if shift + i >= prec:
                break
            out[shift + i] += s_shift * c
        return QExp(base.alpha, out, prec)

    def __add__(self, other: "QExp") -> "QExp":
        if not isinstance(other, QExp):
            return NotImplemented
        return self._add_impl(other, 1)

    def __sub__(self, other: "QExp") -> "QExp":
        if not isinstance(other, QExp):
            return NotImplemented
        return self._add_impl(other, -1)

    def __neg__(self) -> "QExp":
        return self * -1

    def __mul__(self, other) -> "QExp":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QExp.zero(self.prec, self.alpha)
            return QExp(self.alpha, [other * c for c in self.coeffs], self.prec)
        if not isinstance(other, QExp):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other) -> "QExp":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "QExp":
        if not isinstance(k, int):
            raise TypeError("integer power expected; use unit_pow for rational powers")
        if k < 0:
            return self.invert() ** (-k)
        result = QExp.one(self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "QExp":
        """Inverse of a series with nonzero leading coefficient."""
        if self.is_zero:
            raise NonUnitError("cannot invert the zero series")
        a = self.coeffs
        n = self.prec
        inv0 = 1 / a[0]
        b = [Fraction(0)] * n
        b[0] = inv0
        for k in range(1, n):
            s = Fraction(0)
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            b[k] = -inv0 * s
        return QExp(-self.alpha, b, n)

    def truncate(self, prec: int) -> "QExp":
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        return QExp(self.alpha, self.coeffs[:prec], prec)

    def shift(self, t: Rational) -> "QExp":
        """Multiply by q^t."""
        return QExp(self.alpha + Fraction(t), self.coeffs, self.prec)

    def derivative_theta(self) -> "QExp":
        """Apply q d/dq."""
        return QExp(
            self.alpha,
            [(self.alpha + m) * c for m, c in enumerate(self.coeffs)],
            self.prec,
        )


def mul(f: QExp, g: QExp, prec: int | None = None) -> QExp:
    """Product of two series, optionally truncated to a smaller target prec."""
    n = min(f.prec, g.prec)
    if prec is not None:
        n = min(n, prec)
    alpha = f.alpha + g.alpha
    if f.is_zero or g.is_zero:
        return QExp.zero(n, alpha)
    a, b = f.coeffs, g.coeffs
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        if i >= n:
            break
        if not ai:
            continue
        jmax = min(len(b), n - i)
        for j in range(jmax):
            if b[j]:
                out[i + j] += ai * b[j]
    return QExp(alpha, out, n)


def unit_pow(u: QExp, t: Rational, prec: int | None = None) -> QExp:
    """Rational power u^t of a unit series (alpha = 0, constant term 1).

    Coefficients follow the logarithmic-derivative recursion
    k v_k = sum_{j<k} (t(k-j) - j) u_{k-j} v_j, which reproduces the
    generalized binomial expansion of (1 + (u-1))^t exactly.
    """
    if u.is_zero or u.alpha != 0 or u.coeffs[0] != 1:
        raise NonUnitError("unit_pow needs a series with alpha = 0 and constant term 1")
    t = Fraction(t)
    n = u.prec if prec is None else min(prec, u.prec)
    uc = list(u.coeffs) + [Fraction(0)] * (n - len(u.coeffs))
    v = [Fraction(0)] * n
    if n > 0:
        v[0] = Fraction(1)
    for k in range(1, n):
        s = Fraction(0)
        for j in range(k):
            if uc[k - j] and (v[j] or j == 0):
                s += (t * (k - j) - j) * uc[k - j] * v[j]
        v[k] = s / k
    return QExp(0, v, n)


# -- classical series --------------------------------------------------------


@lru_cache(maxsize=None)
def _euler_product(prec: int) -> QExp:
    """prod_{m>=1} (1 - q^m) via the pentagonal number theorem."""
    c = [Fraction(0)] * prec
    if prec > 0:
        c[0] = Fraction(1)
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 >= prec:
            break
        sign = -1 if j % 2 else 1
        c[g1] += sign
        if g2 < prec:
            c[g2] += sign
        j += 1
    return QExp(0, c, prec)


@lru_cache(maxsize=None)
def eta_power(k: int, prec: int) -> QExp:
    """eta^k as a q-expansion: alpha = k/24 and integer coefficients."""
    if k < 1:
        raise PreconditionError("eta_power needs k >= 1")
    unit = unit_pow(_euler_product(prec), k)
    return unit.shift(Fraction(k, 24))


def delta(prec: int) -> QExp:
    """The discriminant q * prod (1-q^m)^24."""
    return eta_power(24, prec)


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> QExp:
    """E2, E4 or E6 in the classical normalization E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m."""
    consts = {2: -24, 4: 240, 6: -504}
    if k not in consts:
        raise PreconditionError(f"unsupported Eisenstein weight {k}; only 2, 4, 6")
    sigma = [0] * prec
    for d in range(1, prec):
        dk = d ** (k - 1)
        for m in range(d, prec, d):
            sigma[m] += dk
    c = [Fraction(consts[k] * s) for s in sigma]
    if prec > 0:
        c[0] = Fraction(1)
    return QExp(0, c, prec)


@lru_cache(maxsize=None)
def j_inverse(prec: int) -> QExp:
    """1/j = Delta / E4^3 = q - 744 q^2 + 356652 q^3 - ..."""
    e4 = eisenstein(4, prec)
    return mul(delta(prec), (e4 * e4 * e4).invert())


@lru_cache(maxsize=None)
def j_unit(prec: int) -> QExp:
    """The unit series u with 1/j = q * u, i.e. u = 1 + q g(q)."""
    return j_inverse(prec).shift(-1)


def g_series(prec: int) -> QExp:
    """g(q) = (j^{-1}/q - 1)/q = -744 + 356652 q - ... (integer coefficients)."""
    u = j_unit(prec + 1)
    cs = list(u.coeffs[1:prec + 1]) + [Fraction(0)] * max(0, prec - (len(u.coeffs) - 1))
    return QExp(0, cs[:prec], prec)


# -- weighted series and the modular derivative ------------------------------


@dataclass(frozen=True)
class Weighted:
    """A q-expansion together with its modular weight."""

    series: QExp
    weight: int


def modular_derivative(f: Weighted) -> Weighted:
    """D_k f = q df/dq - (k/12) E2 f, sending weight k to weight k + 2."""
    s = f.series
    e2 = eisenstein(2, s.prec)
    out = s.derivative_theta() - mul(e2, s) * Fraction(f.weight, 12)
    return Weighted(out, f.weight + 2)


# -- numeric evaluation -------------------------------------------------------


class EvalResult(NamedTuple):
    value: complex
    tail_bound: float


def eval_at_tau(f: QExp, tau: complex, terms: int | None = None) -> EvalResult:
    """Evaluate sum c_m e^{2 pi i (alpha+m) tau} numerically.

    The reported tail bound is the geometric estimate
    |c_last| |x|^{alpha+terms} / (1-|x|) with x = e^{2 pi i tau}; it bounds
    the dropped terms only if |c_m| stops growing, so treat it as an
    estimate, not a certificate.
    """
    if tau.imag <= 0:
        raise PreconditionError("tau must lie in the upper half-plane")
    n = f.prec if terms is None else min(terms, f.prec)
    x = cmath.exp(2j * math.pi * tau)
    ax = abs(x)
    if ax >= 0.9:
        warnings.warn("eval_at_tau: |q| >= 0.9, convergence will be very slow")
    value = 0 + 0j
    last = 0.0
    for m, c in enumerate(f.coeffs[:n]):
        if c:
            value += complex(c) * cmath.exp(2j * math.pi * tau * (float(f.alpha) + m))
            last = abs(c)
    tail = last * ax ** (float(f.alpha) + n) / (1.0 - ax) if ax < 1 else math.inf
    return EvalResult(value, tail)


# -- serialization ------------------------------------------------------------


def csv_rows(f: QExp) -> list[tuple[int, int, int, int]]:
    """One row per nonzero term: exponent_num, exponent_den, coeff_num, coeff_den."""
    return [
        (e.numerator, e.denominator, c.numerator, c.denominator)
        for e, c in f.terms()
    ]


def write_csv(f: QExp, stream) -> None:
    stream.write("exponent_num,exponent_den,coeff_num,coeff_den\n")
    for row in csv_rows(f):
        stream.write(",".join(str(x) for x in row) + "\n")
