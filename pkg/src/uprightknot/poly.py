"""Exact Laurent polynomials and rational functions over the rationals.

Two coefficient rings are supported: one variable ``T`` and two variables
``T1, T2``.  Exponents are stored doubled (``2e``) so that half-integer
powers of ``T`` can appear in intermediate results, e.g. the ``T^{(-φ-w)/2}``
normalisation prefactor of the Alexander polynomial.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; a fraction
whose denominator is 1 is always demoted to ``int``.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "PolyError",
    "NotDivisible",
    "HalfIntegerExponentRemains",
    "DivisionByZero",
    "Target",
    "LaurentPoly1",
    "LaurentPoly2",
    "RationalFunc1",
    "RationalFunc2",
    "exact_divide",
]


class PolyError(ArithmeticError):
    pass


class NotDivisible(PolyError):
    """Raised when an exact division leaves a remainder."""


class HalfIntegerExponentRemains(PolyError):
    """Raised when integrality is asserted on a polynomial with a half-integer power."""


class DivisionByZero(PolyError, ZeroDivisionError):
    pass


class Target(enum.Enum):
    """Images of ``T`` for :meth:`LaurentPoly1.substitute`."""

    T1 = "T1"
    T2 = "T2"
    T1T2 = "T1T2"
    ONE = "1"


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, _RationalABC):
        return _norm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _double(e) -> int:
    """Doubled integer key for an exponent given as int or half-integer Fraction."""
    d = Fraction(e) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return d.numerator


def _undouble(d: int):
    return d // 2 if d % 2 == 0 else Fraction(d, 2)


def _fmt_exp(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


def _fmt_coeff(c, first: bool, unit_allowed: bool) -> tuple[str, str]:
    sign = "-" if c < 0 else ("" if first else "+")
    a = -c if c < 0 else c
    if unit_allowed and a == 1:
        return sign, ""
    return sign, str(a)


class _Laurent:
    """Shared machinery for the sparse Laurent polynomial classes."""

    __slots__ = ("_terms", "_hash")
    _nvars = 0

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _norm(c)
                if c:
                    clean[self._check_key(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict):
        # trusted constructor: keys valid, coefficients normalised and nonzero
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _check_key(cls, k):
        raise NotImplementedError

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def constant(cls, c):
        c = _norm(c)
        return cls._raw({cls._zero_key(): c} if c else {})

    @classmethod
    def _zero_key(cls):
        raise NotImplementedError

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self.constant(other)
        return NotImplemented

    # container-ish protocol
    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def items_doubled(self):
        """(doubled exponent key, coefficient) pairs in sorted key order."""
        return sorted(self._terms.items())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

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
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            if not c:
                return self.zero()
            return self._raw({k: _norm(v * c) for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        add = self._add_keys
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = add(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return self._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise DivisionByZero("only monomials have Laurent inverses")
            (k, c), = self._terms.items()
            return self._raw({self._scale_key(k, e): _norm(Fraction(1) / c ** -e)})
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero scalar")
            return self * (Fraction(1) / other)
        return NotImplemented

    def scale(self, c):
        return self * c

    def coefficient_sum(self):
        return _norm(sum(self._terms.values(), Fraction(0)))

    def l1_norm(self):
        return _norm(sum((abs(c) for c in self._terms.values()), Fraction(0)))

    def is_integral(self) -> bool:
        """True when every stored exponent is an integer."""
        return all(all(x % 2 == 0 for x in self._key_parts(k)) for k in self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def assert_integral_exponents(self):
        """Return ``self`` after checking that no half-integer exponent remains."""
        for k in self._terms:
            if any(x % 2 for x in self._key_parts(k)):
                raise HalfIntegerExponentRemains(
                    f"term with exponent {self._fmt_key(k)} is not integral"
                )
        return self

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class LaurentPoly1(_Laurent):
    """Laurent polynomial in ``T`` with rational coefficients.

    Construct from a mapping of exponent to coefficient::

        >>> LaurentPoly1({1: 1, 0: -1, -1: 1})
        LaurentPoly1(T - 1 + T^-1)

    Exponents may be half-integers given as :class:`~fractions.Fraction`.
    """

    __slots__ = ()
    _nvars = 1

    def __init__(self, terms=None):
        super().__init__({_double(e): c for e, c in (terms or {}).items()})

    @classmethod
    def _check_key(cls, k):
        return int(k)

    @classmethod
    def _zero_key(cls):
        return 0

    @staticmethod
    def _add_keys(a, b):
        return a + b

    @staticmethod
    def _scale_key(a, e):
        return a * e

    @staticmethod
    def _key_parts(k):
        return (k,)

    @staticmethod
    def _fmt_key(k):
        return _fmt_exp(k)

    @classmethod
    def from_doubled(cls, terms: dict) -> "LaurentPoly1":
        obj = cls.__new__(cls)
        _Laurent.__init__(obj, terms)
        return obj

    @classmethod
    def monomial(cls, e=1, c=1) -> "LaurentPoly1":
        return cls.from_doubled({_double(e): c})

    @classmethod
    def T(cls) -> "LaurentPoly1":
        return cls.monomial(1)

    @classmethod
    def from_coeffs(cls, lo: int, coeffs) -> "LaurentPoly1":
        """Dense constructor: ``coeffs[k]`` is the coefficient of ``T^(lo+k)``."""
        return cls._raw({2 * (lo + k): _norm(c) for k, c in enumerate(coeffs) if c})

    def terms(self):
        """Sorted list of (exponent, coefficient); exponents are int or half-integer Fraction."""
        return [(_undouble(k), c) for k, c in sorted(self._terms.items())]

    def coefficient(self, e):
        return self._terms.get(_double(e), 0)

    def min_exponent(self):
        return _undouble(min(self._terms)) if self._terms else None

    def max_exponent(self):
        return _undouble(max(self._terms)) if self._terms else None

    def shift(self, e) -> "LaurentPoly1":
        """Multiply by ``T^e``."""
        d = _double(e)
        return self._raw({k + d: c for k, c in self._terms.items()})

    def eval_at_one(self):
        return self.coefficient_sum()

    def evaluate(self, t):
        """Value at a rational point; requires integral exponents or a perfect-square point."""
        total = Fraction(0)
        t = Fraction(t)
        for k, c in self._terms.items():
            if k % 2:
                raise HalfIntegerExponentRemains("cannot evaluate a half-integer power")
            total += c * t ** (k // 2)
        return _norm(total)

    def mirror(self) -> "LaurentPoly1":
        """Substitute ``T <- T^-1``."""
        return self._raw({-k: c for k, c in self._terms.items()})

    def substitute(self, target: Target):
        """Ring homomorphism sending ``T`` to ``T1``, ``T2``, ``T1*T2`` or ``1``."""
        if target is Target.ONE:
            return self.eval_at_one()
        if target is Target.T1:
            return LaurentPoly2._raw({(k, 0): c for k, c in self._terms.items()})
        if target is Target.T2:
            return LaurentPoly2._raw({(0, k): c for k, c in self._terms.items()})
        if target is Target.T1T2:
            return LaurentPoly2._raw({(k, k): c for k, c in self._terms.items()})
        raise ValueError(target)

    def integer_coeffs(self):
        """Dense form ``(lo, [c_lo, ..., c_hi])`` for a polynomial with integral exponents."""
        self.assert_integral_exponents()
        if not self._terms:
            return 0, []
        lo, hi = min(self._terms) // 2, max(self._terms) // 2
        out = [0] * (hi - lo + 1)
        for k, c in self._terms.items():
            out[k // 2 - lo] = c
        return lo, out

    def to_records(self):
        """Canonical serialisation: ``[[e, num, den], ...]`` sorted by exponent.

        Exponents are integers once integrality holds, otherwise strings such
        as ``"1/2"``.
        """
        out = []
        for k, c in sorted(self._terms.items()):
            c = Fraction(c)
            e = k // 2 if k % 2 == 0 else _fmt_exp(k)
            out.append([e, c.numerator, c.denominator])
        return out

    @classmethod
    def from_records(cls, records) -> "LaurentPoly1":
        return cls({Fraction(e): Fraction(n, d) for e, n, d in records})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            sign, mag = _fmt_coeff(c, not parts, k != 0)
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "T"
            else:
                mono = f"T^{_fmt_exp(k)}"
            body = mag + ("*" if mag and mono else "") + mono
            parts.append(f"{sign}{body}" if not parts else f" {sign or '+'} {body}")
        return "".join(parts).replace("+ -", "- ")


class LaurentPoly2(_Laurent):
    """Laurent polynomial in ``T1, T2`` with rational coefficients."""

    __slots__ = ()
    _nvars = 2

    def __init__(self, terms=None):
        super().__init__(
            {(_double(e1), _double(e2)): c for (e1, e2), c in (terms or {}).items()}
        )

    @classmethod
    def _check_key(cls, k):
        a, b = k
        return (int(a), int(b))

    @classmethod
    def _zero_key(cls):
        return (0, 0)

    @staticmethod
    def _add_keys(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _scale_key(a, e):
        return (a[0] * e, a[1] * e)

    @staticmethod
    def _key_parts(k):
        return k

    @staticmethod
    def _fmt_key(k):
        return f"({_fmt_exp(k[0])}, {_fmt_exp(k[1])})"

    @classmethod
    def from_doubled(cls, terms: dict) -> "LaurentPoly2":
        obj = cls.__new__(cls)
        _Laurent.__init__(obj, terms)
        return obj

    @classmethod
    def from_int_terms(cls, terms: dict) -> "LaurentPoly2":
        """Build from ``{(e1, e2): coeff}`` with integer exponents (no doubling)."""
        return cls._raw({(2 * a, 2 * b): _norm(c) for (a, b), c in terms.items() if c})

    @classmethod
    def monomial(cls, e1=0, e2=0, c=1) -> "LaurentPoly2":
        return cls.from_doubled({(_double(e1), _double(e2)): c})

    @classmethod
    def T1(cls):
        return cls.monomial(1, 0)

    @classmethod
    def T2(cls):
        return cls.monomial(0, 1)

    def terms(self):
        return [((_undouble(a), _undouble(b)), c) for (a, b), c in sorted(self._terms.items())]

    def coefficient(self, e1, e2):
        return self._terms.get((_double(e1), _double(e2)), 0)

    def shift(self, e1=0, e2=0) -> "LaurentPoly2":
        d1, d2 = _double(e1), _double(e2)
        return self._raw({(a + d1, b + d2): c for (a, b), c in self._terms.items()})

    def min_exponents(self):
        if not self._terms:
            return None
        return (_undouble(min(a for a, _ in self._terms)), _undouble(min(b for _, b in self._terms)))

    def specialize(self) -> LaurentPoly1:
        """Substitute ``T1 <- 1, T2 <- T``."""
        out: dict = {}
        for (_, b), c in self._terms.items():
            out[b] = out.get(b, 0) + c
        return LaurentPoly1._raw({k: _norm(c) for k, c in out.items() if c})

    def evaluate(self, t1, t2):
        total = Fraction(0)
        t1, t2 = Fraction(t1), Fraction(t2)
        for (a, b), c in self._terms.items():
            if a % 2 or b % 2:
                raise HalfIntegerExponentRemains("cannot evaluate a half-integer power")
            total += c * t1 ** (a // 2) * t2 ** (b // 2)
        return _norm(total)

    def swap(self) -> "LaurentPoly2":
        return self._raw({(b, a): c for (a, b), c in self._terms.items()})

    def to_records(self):
        """``[[e1, e2, num, den], ...]`` sorted by exponent pair."""
        out = []
        for (a, b), c in sorted(self._terms.items()):
            c = Fraction(c)
            e1 = a // 2 if a % 2 == 0 else _fmt_exp(a)
            e2 = b // 2 if b % 2 == 0 else _fmt_exp(b)
            out.append([e1, e2, c.numerator, c.denominator])
        return out

    @classmethod
    def from_records(cls, records) -> "LaurentPoly2":
        return cls({(Fraction(a), Fraction(b)): Fraction(n, d) for a, b, n, d in records})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), reverse=True):
            sign, mag = _fmt_coeff(c, not parts, (a, b) != (0, 0))
            monos = []
            for name, k in (("T1", a), ("T2", b)):
                if k == 2:
                    monos.append(name)
                elif k:
                    monos.append(f"{name}^{_fmt_exp(k)}")
            body = "*".join(([mag] if mag else []) + monos)
            parts.append(f"{sign}{body}" if not parts else f" {sign or '+'} {body}")
        return "".join(parts)


# --------------------------------------------------------------------------
# exact division


def _min_key(p: _Laurent):
    keys = list(p._terms)
    if isinstance(p, LaurentPoly1):
        return min(keys)
    return (min(a for a, _ in keys), min(b for _, b in keys))


def _shift_raw(p: _Laurent, d):
    if isinstance(p, LaurentPoly1):
        return {k - d: c for k, c in p._terms.items()}
    return {(a - d[0], b - d[1]): c for (a, b), c in p._terms.items()}


def exact_divide(p, d):
    """Return ``q`` with ``q * d == p`` or raise :class:`NotDivisible`.

    Works in the Laurent ring: both operands are shifted to ordinary
    polynomials with no monomial factor before long division.
    """
    if type(p) is not type(d):
        raise TypeError("exact_divide needs two polynomials of the same ring")
    if d.is_zero():
        raise DivisionByZero("exact_divide by zero polynomial")
    if p.is_zero():
        return p
    cls = type(p)
    pshift, dshift = _min_key(p), _min_key(d)
    rem = _shift_raw(p, pshift)
    dt = _shift_raw(d, dshift)
    lead = max(dt)
    lead_c = dt[lead]
    quo: dict = {}
    univariate = cls is LaurentPoly1
    while rem:
        top = max(rem)
        if univariate:
            qk = top - lead
            if qk < 0:
                raise NotDivisible("nonzero remainder")
        else:
            qk = (top[0] - lead[0], top[1] - lead[1])
            if qk[0] < 0 or qk[1] < 0:
                raise NotDivisible("nonzero remainder")
        qc = _norm(Fraction(rem[top]) / lead_c)
        quo[qk] = qc
        for k, c in dt.items():
            kk = k + qk if univariate else (k[0] + qk[0], k[1] + qk[1])
            v = rem.get(kk, 0) - qc * c
            if v:
                rem[kk] = _norm(v)
            else:
                rem.pop(kk, None)
    if univariate:
        return cls._raw({k + pshift - dshift: c for k, c in quo.items()})
    return cls._raw({(a + pshift[0] - dshift[0], b + pshift[1] - dshift[1]): c for (a, b), c in quo.items()})


# --------------------------------------------------------------------------
# rational functions


def _normalize_factor(f):
    """Split ``f`` into (unit, primitive factor): unit is a scaled monomial.

    The factor has lowest exponent zero in every variable and leading
    coefficient 1.
    """
    shift = _min_key(f)
    terms = _shift_raw(f, shift)
    lead = terms[max(terms)]
    cls = type(f)
    factor = cls._raw({k: _norm(Fraction(c) / lead) for k, c in terms.items()})
    return cls._raw({shift: lead}), factor


class _RationalFunc:
    """Quotient ``num / Π factor^exp`` kept with a factored denominator.

    Denominator factors are normalised (no monomial content, leading
    coefficient 1) and never multiplied out, so sums of terms over products
    of a few known polynomials keep a small common denominator.  Common
    factors with the numerator are removed only by :meth:`cancel`.
    """

    __slots__ = ("num", "_den")
    _poly = _Laurent

    def __init__(self, num, den=None):
        poly = self._poly
        if isinstance(num, (int, Fraction)):
            num = poly.constant(num)
        if not isinstance(num, poly):
            raise TypeError(f"numerator must be {poly.__name__}")
        self.num = num
        self._den: dict = {}
        if den is not None:
            if isinstance(den, (int, Fraction)):
                den = poly.constant(den)
            self._absorb_den(den, 1)

    def _absorb_den(self, den, exp):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        unit, fac = _normalize_factor(den)
        # num / (unit*fac)^exp  ->  (num * unit^-exp) / fac^exp
        self.num = self.num * unit ** (-exp)
        if len(fac) > 1:
            self._den[fac] = self._den.get(fac, 0) + exp

    @classmethod
    def _make(cls, num, den: dict):
        obj = cls.__new__(cls)
        obj.num = num
        obj._den = den
        return obj

    @property
    def den(self):
        """Denominator multiplied out."""
        return reduce(lambda a, fe: a * fe[0] ** fe[1], self._den.items(), self._poly.one())

    def den_factors(self):
        return sorted(self._den.items(), key=lambda fe: fe[0].items_doubled())

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction, self._poly)):
            return type(self)(other)
        return NotImplemented

    def _lift(self, den: dict):
        """Numerator over the (larger) factored denominator ``den``."""
        num = self.num
        for f, e in den.items():
            extra = e - self._den.get(f, 0)
            if extra:
                num = num * f ** extra
        return num

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return self._make(self.num + other.num, dict(self._den))
        den = dict(self._den)
        for f, e in other._den.items():
            if den.get(f, 0) < e:
                den[f] = e
        return self._make(self._lift(den) + other._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return self._make(-self.num, dict(self._den))

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
        den = dict(self._den)
        for f, e in other._den.items():
            den[f] = den.get(f, 0) + e
        return self._make(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        out = type(self)(self.den)
        out._absorb_den(self.num, 1)
        return out

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

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def cancel(self):
        """Remove denominator factors that divide the numerator exactly."""
        num = self.num
        den = {}
        for f, e in self._den.items():
            while e:
                try:
                    num = exact_divide(num, f)
                except NotDivisible:
                    break
                e -= 1
            if e:
                den[f] = e
        return self._make(num, den)

    def to_poly(self):
        """The Laurent polynomial this function equals, or :class:`NotDivisible`."""
        reduced = self.cancel()
        if reduced._den:
            raise NotDivisible("denominator does not cancel")
        return reduced.num

    def __repr__(self):
        if not self._den:
            return f"{type(self).__name__}({self.num})"
        den = " * ".join(f"({f})^{e}" if e > 1 else f"({f})" for f, e in self.den_factors())
        return f"{type(self).__name__}(({self.num}) / {den})"


class RationalFunc1(_RationalFunc):
    """Quotient of Laurent polynomials in ``T``."""

    __slots__ = ()
    _poly = LaurentPoly1

    def substitute(self, target: Target):
        if target is Target.ONE:
            value = Fraction(self.num.eval_at_one())
            for f, e in self._den.items():
                v = f.eval_at_one()
                if v == 0:
                    raise DivisionByZero(f"denominator factor {f} vanishes at T=1")
                value /= Fraction(v) ** e
            return _norm(value)
        out = RationalFunc2(self.num.substitute(target))
        for f, e in self._den.items():
            out._absorb_den(f.substitute(target), e)
        return out


class RationalFunc2(_RationalFunc):
    """Quotient of Laurent polynomials in ``T1, T2``."""

    __slots__ = ()
    _poly = LaurentPoly2

    def specialize(self) -> RationalFunc1:
        """Substitute ``T1 <- 1, T2 <- T``."""
        out = RationalFunc1(self.num.specialize())
        for f, e in self._den.items():
            g = f.specialize()
            if g.is_zero():
                raise DivisionByZero(f"denominator factor {f} vanishes at T1=1")
            out._absorb_den(g, e)
        return out
