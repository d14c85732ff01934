"""Exact arithmetic in Q[q^{1/2}, q^{-1/2}] and its fraction field.

Exponents are stored in half units: the integer ``e`` stands for ``q^{e/2}``.
The q-integer is the symmetric one, ``[n]_q = q^{n/2} - q^{-n/2}``, and every
q-combinatorial helper in the package is built on it.

Internally a Laurent polynomial is ``u^low * p(u)`` with ``u = q^{1/2}`` and
``p`` a python-flint ``fmpq_poly`` whose constant term is nonzero.  That keeps
gcds and exact division fast while the public view stays a map from
half-exponent to :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from flint import fmpq, fmpq_poly, fmpz_poly

Scalar = Union[int, Fraction]

__all__ = [
    "LaurentQ",
    "RationalQ",
    "HbarSeries",
    "NonExactDivision",
    "AsymmetricInput",
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_pochhammer",
    "pochhammer",
    "exact_div",
    "substitute_qk",
    "hbar_expand",
    "genus_coefficients",
    "mobius",
    "divisors",
    "divisors_with_mobius",
    "q_lucas_check",
    "q_binomial_derivative_at_root",
    "binomial",
]


class NonExactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a remainder."""

    def __init__(self, remainder: "LaurentQ", message: str = "division is not exact"):
        super().__init__(f"{message}; remainder {remainder}")
        self.remainder = remainder


class AsymmetricInput(ValueError):
    """The input is not invariant under q -> 1/q."""


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    c = _to_fraction(c)
    return fmpq(c.numerator, c.denominator)


def _strip(low: int, poly: fmpq_poly) -> Tuple[int, fmpq_poly]:
    """Move powers of u out of ``poly`` so that its constant term is nonzero."""
    if poly == 0:
        return 0, fmpq_poly(0)
    coeffs = poly.coeffs()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        poly = fmpq_poly(coeffs[k:])
    return low + k, poly


class LaurentQ:
    """Immutable Laurent polynomial in ``q^{1/2}`` with rational coefficients."""

    __slots__ = ("_low", "_poly", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        if not coeffs:
            self._low, self._poly = 0, fmpq_poly(0)
        else:
            items = {int(e): _to_fraction(c) for e, c in coeffs.items() if c != 0}
            if not items:
                self._low, self._poly = 0, fmpq_poly(0)
            else:
                lo = min(items)
                hi = max(items)
                lst = [fmpq(0)] * (hi - lo + 1)
                for e, c in items.items():
                    lst[e - lo] = fmpq(c.numerator, c.denominator)
                self._low, self._poly = lo, fmpq_poly(lst)
        self._hash = None

    @classmethod
    def _raw(cls, low: int, poly: fmpq_poly) -> "LaurentQ":
        obj = cls.__new__(cls)
        obj._low, obj._poly = _strip(low, poly)
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "LaurentQ":
        return cls._raw(0, fmpq_poly([_to_fmpq(c)]))

    @classmethod
    def monomial(cls, half_exponent: int, c: Scalar = 1) -> "LaurentQ":
        return cls._raw(half_exponent, fmpq_poly([_to_fmpq(c)]))

    @classmethod
    def q(cls) -> "LaurentQ":
        return cls.monomial(2)

    @classmethod
    def from_json(cls, data: Union[str, Mapping[str, str]]) -> "LaurentQ":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(k): Fraction(v) for k, v in data.items()})

    # views ----------------------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        if self._poly == 0:
            return {}
        out = {}
        for i, c in enumerate(self._poly.coeffs()):
            if c != 0:
                out[self._low + i] = _to_fraction(c)
        return out

    def items(self) -> List[Tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def coeff(self, half_exponent: int) -> Fraction:
        i = half_exponent - self._low
        if self._poly == 0 or i < 0 or i > self._poly.degree():
            return Fraction(0)
        return _to_fraction(self._poly.coeffs()[i])

    def is_zero(self) -> bool:
        return self._poly == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def min_exponent(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no exponents")
        return self._low

    @property
    def max_exponent(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no exponents")
        return self._low + self._poly.degree()

    def is_constant(self) -> bool:
        return self.is_zero() or (self._low == 0 and self._poly.degree() == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeff(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_symmetric(self) -> bool:
        return self == self.invert()

    def at_one(self) -> Fraction:
        """Value at q = 1 (sum of coefficients)."""
        return _to_fraction(self._poly(fmpq(1))) if self._poly != 0 else Fraction(0)

    def at_minus_sqrt(self) -> Fraction:
        """Value at q^{1/2} = -1."""
        return _to_fraction(self._poly(fmpq(-1))) * (-1) ** (self._low % 2) if self._poly != 0 else Fraction(0)

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentQ":
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, (int, Fraction, fmpq)):
            return LaurentQ.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self._low, other._low)
        a = self._poly * fmpq_poly([0] * (self._low - lo) + [1]) if self._low > lo else self._poly
        b = other._poly * fmpq_poly([0] * (other._low - lo) + [1]) if other._low > lo else other._poly
        return LaurentQ._raw(lo, a + b)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ._raw(self._low, -self._poly)

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
        if isinstance(other, RationalQ):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentQ._raw(self._low + other._low, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self._poly.degree() == 0:
                c = self._poly.coeffs()[0]
                return LaurentQ._raw(-self._low * (-n), fmpq_poly([1 / c ** (-n)]))
            raise ValueError("negative power of a non-monomial")
        return LaurentQ._raw(self._low * n, self._poly ** n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            if other == 0:
                raise ZeroDivisionError
            return LaurentQ._raw(self._low, self._poly / _to_fmpq(other))
        if isinstance(other, LaurentQ):
            return RationalQ(self, other)
        if isinstance(other, RationalQ):
            return RationalQ(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalQ(other, self)

    def __eq__(self, other):
        if isinstance(other, RationalQ):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._low == other._low and self._poly == other._poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, tuple(str(c) for c in self._poly.coeffs())))
        return self._hash

    # substitutions ----------------------------------------------------------
    def invert(self) -> "LaurentQ":
        """q -> 1/q."""
        if self.is_zero():
            return self
        deg = self._poly.degree()
        rev = fmpq_poly(list(reversed(self._poly.coeffs())))
        return LaurentQ._raw(-(self._low + deg), rev)

    def negate_sqrt(self) -> "LaurentQ":
        """q^{1/2} -> -q^{1/2}."""
        return LaurentQ({e: (-c if e % 2 else c) for e, c in self.coeffs.items()})

    def substitute_qk(self, k: int) -> "LaurentQ":
        if k < 1:
            raise ValueError("k must be positive")
        if k == 1 or self.is_zero():
            return self
        cs = self._poly.coeffs()
        lst = [fmpq(0)] * (k * (len(cs) - 1) + 1)
        for i, c in enumerate(cs):
            lst[k * i] = c
        return LaurentQ._raw(self._low * k, fmpq_poly(lst))

    def shift(self, half_exponent: int) -> "LaurentQ":
        """Multiply by q^{half_exponent/2}."""
        return LaurentQ._raw(self._low + half_exponent, self._poly)

    # serialization -----------------------------------------------------------
    def to_json_obj(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in self.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __repr__(self):
        return f"LaurentQ({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            if mono == "":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    # internal access for RationalQ
    @property
    def _parts(self):
        return self._low, self._poly


ONE = LaurentQ.const(1)
ZERO = LaurentQ()


class RationalQ:
    """Quotient of two Laurent polynomials, kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentQ._coerce(num) if not isinstance(num, LaurentQ) else num
        if den is None:
            den = ONE
        elif not isinstance(den, LaurentQ):
            den = LaurentQ._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        nl, npoly = num._parts
        dl, dpoly = den._parts
        if dpoly.degree() > 0:
            g = npoly.gcd(dpoly)
            if g.degree() > 0:
                npoly = npoly // g
                dpoly = dpoly // g
        lead = dpoly.coeffs()[-1]
        npoly = npoly / lead
        dpoly = dpoly / lead
        self.num = LaurentQ._raw(nl - dl, npoly)
        self.den = LaurentQ._raw(0, dpoly)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalQ):
            return other
        if isinstance(other, (LaurentQ, int, Fraction, fmpq)):
            return RationalQ(other)
        return NotImplemented

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def to_laurent(self) -> LaurentQ:
        if not self.is_laurent():
            raise NonExactDivision(self.num, f"{self} is not a Laurent polynomial")
        return self.num / self.den.constant_value()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RationalQ(self.num + other.num, self.den)
        return RationalQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = RationalQ.__new__(RationalQ)
        r.num, r.den = -self.num, self.den
        return r

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
        return RationalQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n >= 0:
            return RationalQ(self.num ** n, self.den ** n)
        return RationalQ(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def invert(self) -> "RationalQ":
        return RationalQ(self.num.invert(), self.den.invert())

    def negate_sqrt(self) -> "RationalQ":
        return RationalQ(self.num.negate_sqrt(), self.den.negate_sqrt())

    def substitute_qk(self, k: int) -> "RationalQ":
        return RationalQ(self.num.substitute_qk(k), self.den.substitute_qk(k))

    def at_one(self) -> Fraction:
        """Value at q = 1; raises ZeroDivisionError at a pole."""
        d = self.den.at_one()
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at q=1")
        return self.num.at_one() / d

    def __repr__(self):
        return f"RationalQ({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


class HbarSeries:
    """Truncated even power series ``sum_k c_k hbar^{2k}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        self.coeffs: List[Fraction] = [Fraction(c) for c in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "HbarSeries") -> "HbarSeries":
        g = min(self.order, other.order)
        out = [Fraction(0)] * (g + 1)
        for i in range(g + 1):
            for j in range(g + 1 - i):
                out[i + j] += self.coeffs[i] * other.coeffs[j]
        return HbarSeries(out)

    def __eq__(self, other):
        return isinstance(other, HbarSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HbarSeries({[str(c) for c in self.coeffs]})"


# ----------------------------------------------------------------------------
# q-combinatorics


def q_int(n: int) -> LaurentQ:
    """[n]_q = q^{n/2} - q^{-n/2}."""
    if n == 0:
        return ZERO
    return LaurentQ({n: 1, -n: -1})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentQ:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return ONE
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def _q_binomial(n: int, k: int) -> LaurentQ:
    if k == 0 or k == n:
        return ONE
    # symmetric q-Pascal rule
    return _q_binomial(n - 1, k).shift(-k) + _q_binomial(n - 1, k - 1).shift(n - k)


def q_binomial(n: int, k: int) -> LaurentQ:
    """Symmetric Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("q_binomial needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    return _q_binomial(n, min(k, n - k))


def q_pochhammer(x: LaurentQ, n: int) -> LaurentQ:
    """(x; q)_n = prod_{j<n} (1 - x q^j)."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    out = ONE
    for j in range(n):
        out = out * (ONE - x.shift(2 * j))
    return out


def pochhammer(a: Scalar, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1)."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = Fraction(1)
    a = Fraction(a)
    for j in range(n):
        out *= a + j
    return out


def binomial(n: int, k: int) -> int:
    """Classical binomial with value 0 outside 0 <= k <= n (and for n < 0)."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def exact_div(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    """Return c with a = b*c, or raise NonExactDivision."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    al, ap = a._parts
    bl, bp = b._parts
    quo, rem = divmod(ap, bp)
    if rem != 0:
        raise NonExactDivision(LaurentQ._raw(al, rem))
    return LaurentQ._raw(al - bl, quo)


def substitute_qk(a, k: int):
    return a.substitute_qk(k)


# ----------------------------------------------------------------------------
# hbar expansions


def hbar_expand(a: LaurentQ, order: int = 5) -> HbarSeries:
    """Taylor coefficients of a(e^{i hbar}) in hbar^2 up to hbar^{2*order}."""
    if not a.is_symmetric():
        raise AsymmetricInput(f"{a} is not invariant under q -> 1/q")
    cs = a.coeffs
    out = [Fraction(0)] * (order + 1)
    out[0] = cs.get(0, Fraction(0))
    for e, c in cs.items():
        if e <= 0:
            continue
        # 2 c cos(e hbar / 2)
        x = Fraction(e, 2)
        for k in range(order + 1):
            out[k] += 2 * c * (-1) ** k * x ** (2 * k) / math.factorial(2 * k)
    return HbarSeries(out)


def _sinc_half(order: int) -> HbarSeries:
    # 2 sin(h/2)/h = sum_k (-1)^k h^{2k} / (4^k (2k+1)!)
    return HbarSeries(Fraction((-1) ** k, 4 ** k * math.factorial(2 * k + 1)) for k in range(order + 1))


def genus_coefficients(P: LaurentQ, l: int, order: int = 5) -> List[Fraction]:
    """N_g for g = 0..order from the q-polynomial of an l-component pair."""
    if l not in (2, 3, 4):
        raise ValueError("l must be 2, 3 or 4")
    series = hbar_expand(P, order)
    s = _sinc_half(order)
    for _ in range(l - 2):
        series = series * s
    return list(series.coeffs)


# ----------------------------------------------------------------------------
# number theory


def mobius(k: int) -> int:
    if k < 1:
        raise ValueError("mobius needs k >= 1")
    result = 1
    p = 2
    n = k
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> List[int]:
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    return [k for k in range(1, n + 1) if n % k == 0]


def divisors_with_mobius(n: int) -> List[Tuple[int, int]]:
    return [(k, mobius(k)) for k in divisors(n)]


# ----------------------------------------------------------------------------
# roots of unity
#
# Half-integer exponents need a square root of the primitive d-th root, so the
# computations take place in Q(u) with u = exp(i pi / d), a primitive 2d-th
# root of unity, i.e. modulo the cyclotomic polynomial Phi_{2d}(u).


def _reduce_at_root(a: LaurentQ, d: int) -> fmpq_poly:
    m = 2 * d
    lst = [fmpq(0)] * m
    for e, c in a.coeffs.items():
        lst[e % m] += fmpq(c.numerator, c.denominator)
    phi = fmpq_poly(fmpz_poly.cyclotomic(m).coeffs())
    return fmpq_poly(lst) % phi


def q_lucas_check(n: int, m: int, d: int) -> bool:
    """Check the q-Lucas theorem for [n choose m]_q at a primitive d-th root."""
    if not (n >= m >= 0) or d < 1:
        raise ValueError("need n >= m >= 0 and d >= 1")
    lhs = _reduce_at_root(q_binomial(n, m), d)
    n0, m0 = n % d, m % d
    rhs_poly = q_binomial(n0, m0) * binomial(n // d, m // d) if m0 <= n0 else ZERO
    # phase omega^{(m(m-n) - m0(m0-n0))/2}; the residual term cancels the
    # symmetric normalisation of the small binomial and vanishes when d | m, n
    rhs = _reduce_at_root(rhs_poly.shift(m * (m - n) - m0 * (m0 - n0)), d)
    return lhs == rhs


def q_binomial_derivative_at_root(n: int, m: int, d: int) -> Fraction:
    """d/dq of [n choose m]_q at a primitive d-th root of unity.

    Requires d | m | n.  The value lies in a cyclotomic field; it is returned
    as a rational when it is rational and otherwise a ValueError is raised.
    """
    if d < 1 or m < 1 or m % d or n % m:
        raise ValueError("need d | m | n with m >= 1")
    b = q_binomial(n, m)
    # d/dq u^e = (e/2) u^{e-2}
    deriv = LaurentQ({e - 2: c * Fraction(e, 2) for e, c in b.coeffs.items()})
    red = _reduce_at_root(deriv, d)
    if red.degree() <= 0:
        return _to_fraction(red(fmpq(0))) if red != 0 else Fraction(0)
    raise ValueError(f"derivative is irrational at the root: {red}")
