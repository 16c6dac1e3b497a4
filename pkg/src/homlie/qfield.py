"""Exact arithmetic in Q(q), the field of rational functions in one indeterminate q.

Values are fractions of sparse Laurent polynomials with integer coefficients,
kept in a canonical form so that equality and hashing are plain structural
comparisons.  The module also provides the two q-number families used by the
q-deformed graded algebras (`qbracket` for the symmetric one, `qbrace` for the
geometric one) and exact evaluation at rational points of q.

Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as _igcd, lcm as _ilcm


class ForbiddenSpecialization(ArithmeticError):
    """Raised when q is specialized to 0, 1 or -1."""


class PoleAtPoint(ArithmeticError):
    """Raised when a denominator vanishes at the requested point."""


def _norm_coeff(c):
    # Keep plain ints whenever exact; Fractions only when truly non-integral.
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    return c


class LaurentPoly:
    """Sparse Laurent polynomial: a map exponent -> nonzero coefficient.

    Coefficients are Python ints or Fractions; the zero polynomial is the
    empty map.  Instances are immutable by convention.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                c = _norm_coeff(c)
                if c:
                    c0 = t.get(e)
                    if c0 is None:
                        t[e] = c
                    else:
                        c0 = _norm_coeff(c0 + c)
                        if c0:
                            t[e] = c0
                        else:
                            del t[e]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # Trusted constructor: terms already canonical (no zeros, normalized).
        self = object.__new__(cls)
        self._t = terms
        self._hash = None
        return self

    @classmethod
    def monomial(cls, exp, coeff=1):
        coeff = _norm_coeff(coeff)
        return cls._raw({exp: coeff}) if coeff else cls._raw({})

    @classmethod
    def const(cls, c):
        return cls.monomial(0, c)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, exp):
        return self._t.get(exp, 0)

    @property
    def min_exp(self):
        return min(self._t)

    @property
    def max_exp(self):
        return max(self._t)

    def is_integral(self):
        return all(isinstance(c, int) for c in self._t.values())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a:
            return other
        if not b:
            return self
        t = dict(a)
        for e, c in b.items():
            c0 = t.get(e)
            if c0 is None:
                t[e] = c
            else:
                c0 = c0 + c
                if c0:
                    t[e] = c0
                else:
                    del t[e]
        return LaurentPoly._raw(t)

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return _P0
            if other == 1:
                return self
            return LaurentPoly._raw(
                {e: _norm_coeff(c * other) for e, c in self._t.items()}
            )
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return _P0
        b_owner = other
        if len(a) > len(b):
            a, b = b, a
            b_owner = self
        if len(a) == 1:
            (e1, c1), = a.items()
            if c1 == 1:
                if e1 == 0:
                    return b_owner
                return LaurentPoly._raw({e + e1: c for e, c in b.items()})
            return LaurentPoly._raw({e + e1: c1 * c for e, c in b.items()})
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                c0 = t.get(e)
                if c0 is None:
                    t[e] = c1 * c2
                else:
                    t[e] = c0 + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("LaurentPoly powers must be nonnegative integers")
        out = _P1
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by q**k."""
        if k == 0 or not self._t:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def scale_div(self, fr):
        """Exact division by a nonzero rational."""
        inv = Fraction(1, 1) / Fraction(fr)
        return LaurentPoly._raw(
            {e: _norm_coeff(c * inv) for e, c in self._t.items()}
        )

    # -- structure -------------------------------------------------------

    def content(self):
        """Positive rational c with self/c primitive integral (0 for zero)."""
        if not self._t:
            return Fraction(0)
        nums = []
        dens = []
        for c in self._t.values():
            if isinstance(c, int):
                nums.append(abs(c))
                dens.append(1)
            else:
                nums.append(abs(c.numerator))
                dens.append(c.denominator)
        return Fraction(reduce(_igcd, nums), reduce(_ilcm, dens))

    def evaluate(self, q0):
        """Exact value at q = q0 (nonzero rational)."""
        q0 = Fraction(q0)
        if q0 == 0 and self._t and self.min_exp < 0:
            raise ZeroDivisionError("negative power of q at q = 0")
        return sum((Fraction(c) * q0 ** e for e, c in self._t.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if other == 0:
                return not self._t
            return self._t == {0: other}
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(frozenset(self._t.items()))
        return h

    def __getstate__(self):
        return self._t

    def __setstate__(self, state):
        self._t = state
        self._hash = None

    def __str__(self):
        return _poly_str(self)

    def __repr__(self):
        return f"LaurentPoly({_poly_str(self)!r})"


_P0 = LaurentPoly._raw({})
_P1 = LaurentPoly._raw({0: 1})
_Pq = LaurentPoly._raw({1: 1})


def _coeff_str(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _poly_str(p):
    if p.is_zero:
        return "0"
    parts = []
    for e in sorted(p._t, reverse=True):
        c = p._t[e]
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = _coeff_str(mag)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if mag == 1 else f"{_coeff_str(mag)}*{var}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# -- polynomial helpers (nonnegative exponents) --------------------------


def _to_dense(p, numeric=Fraction):
    n = p.max_exp
    out = [numeric(0)] * (n + 1)
    for e, c in p.items():
        out[e] = numeric(c)
    return out


def _from_dense(dense):
    return LaurentPoly({e: c for e, c in enumerate(dense)})


def _primitive(p):
    """Scale to integer coefficients with content 1 and positive lowest term."""
    if p.is_zero:
        return p
    c = p.content()
    if p.coeff(p.min_exp) < 0:
        c = -c
    return p.scale_div(c)


def _strip(v):
    while v and not v[-1]:
        v.pop()
    return v


def _int_primitive(v):
    # v: nonempty int list -> content-free with positive leading coefficient
    c = reduce(_igcd, (x for x in v if x))
    if v[-1] < 0:
        c = -c
    if c != 1:
        v = [x // c for x in v]
    return v


def _int_pseudo_mod(x, y):
    # Pseudo-remainder of integer dense lists; y nonzero, both stripped.
    dy = len(y) - 1
    ly = y[-1]
    r = x[:]
    while len(r) - 1 >= dy:
        if not r[-1]:
            r.pop()
            continue
        f = r[-1]
        off = len(r) - 1 - dy
        for i in range(len(r)):
            r[i] *= ly
        for i in range(dy + 1):
            r[off + i] -= f * y[i]
        r.pop()
        _strip(r)
        if not r:
            break
    return _strip(r)


def poly_gcd(a, b):
    """Gcd over Q[q] of two Laurent polynomials, up to units.

    The result is a primitive integer polynomial with nonzero constant term
    and positive lowest coefficient.
    """
    if a.is_zero:
        return _primitive(b.shift(-b.min_exp)) if not b.is_zero else _P0
    if b.is_zero:
        return _primitive(a.shift(-a.min_exp))
    a = _primitive(a.shift(-a.min_exp))
    b = _primitive(b.shift(-b.min_exp))
    x = _to_dense(a, int)
    y = _to_dense(b, int)
    # primitive polynomial remainder sequence over the integers
    while y:
        if len(x) < len(y):
            x, y = y, x
            continue
        r = _int_pseudo_mod(x, y)
        if r:
            r = _int_primitive(r)
        x, y = y, r
    x = _int_primitive(x)
    if x[0] < 0:
        x = [-c for c in x]
    return _from_dense(x)


def poly_divexact(a, b):
    """Exact quotient a / b in the Laurent ring; raises if not divisible."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return _P0
    sa, sb = a.min_exp, b.min_exp
    if a.is_integral() and b.is_integral():
        x = _to_dense(a.shift(-sa), int)
        y = _to_dense(b.shift(-sb), int)
        dq = len(x) - len(y)
        if dq < 0:
            raise ValueError("not divisible")
        quot = [0] * (dq + 1)
        ly = y[-1]
        integral = True
        while x and len(x) >= len(y):
            if not x[-1]:
                x.pop()
                continue
            f, rem = divmod(x[-1], ly)
            if rem:
                # quotient has non-integer coefficients; retry over Q
                integral = False
                break
            off = len(x) - len(y)
            quot[off] = f
            for i in range(len(y)):
                x[off + i] -= f * y[i]
            _strip(x)
        if integral:
            if x:
                raise ValueError("not divisible")
            return _from_dense(quot).shift(sa - sb)
    x = _to_dense(a.shift(-sa))
    y = _to_dense(b.shift(-sb))
    dq = len(x) - len(y)
    if dq < 0:
        raise ValueError("not divisible")
    quot = [Fraction(0)] * (dq + 1)
    ly = y[-1]
    while x and len(x) - 1 >= len(y) - 1:
        f = x[-1] / ly
        off = len(x) - len(y)
        quot[off] = f
        for i in range(len(y)):
            x[off + i] -= f * y[i]
        while x and x[-1] == 0:
            x.pop()
    if x:
        raise ValueError("not divisible")
    return _from_dense(quot).shift(sa - sb)


# -- the field -----------------------------------------------------------


class QRational:
    """Element of Q(q) in canonical reduced form.

    Invariants: the denominator is a nonzero polynomial in q with nonzero
    constant term, integer coefficients and positive constant coefficient;
    numerator and denominator have no common polynomial factor and no common
    rational content.  Two values are equal iff their parts compare equal.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, LaurentPoly):
            q = _canonical(value, _P1)
        elif isinstance(value, (int, Fraction)):
            q = _canonical(LaurentPoly.const(value), _P1)
        else:
            raise TypeError(f"cannot build QRational from {type(value).__name__}")
        self.num = q.num
        self.den = q.den
        self._hash = None

    @classmethod
    def _trusted(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def make(cls, num, den):
        """Canonical fraction num/den of Laurent polynomials."""
        return _canonical(num, den)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.den is _P1 and self.num == _P1

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QRational):
            return other
        if isinstance(other, (int, Fraction)):
            return QRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den is _P1 and other.den is _P1:
            return QRational._trusted(self.num + other.num, _P1)
        return _canonical(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return QRational._trusted(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den is _P1 and other.den is _P1:
            return QRational._trusted(self.num * other.num, _P1)
        return _canonical(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero in Q(q)")
        return _canonical(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return _canonical(self.den, self.num)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        out = Q1
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.den))
        return h

    def __getstate__(self):
        return (self.num, self.den)

    def __setstate__(self, state):
        self.num, self.den = state
        self._hash = None

    def __str__(self):
        if self.den is _P1 or self.den == _P1:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"QRational({str(self)!r})"


def _canonical(num, den):
    if den.is_zero:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if num.is_zero:
        return Q0
    a, b = num.min_exp, den.min_exp
    n = num.shift(-a)
    d = den.shift(-b)
    g = poly_gcd(n, d)
    if g != _P1:
        n = poly_divexact(n, g)
        d = poly_divexact(d, g)
    cn, cd = n.content(), d.content()
    c = Fraction(_igcd(cn.numerator, cd.numerator), _ilcm(cn.denominator, cd.denominator))
    if d.coeff(0) < 0:
        c = -c
    if c != 1:
        n = n.scale_div(c)
        d = d.scale_div(c)
    if d == _P1:
        d = _P1
    return QRational._trusted(n.shift(a - b), d)


Q0 = QRational._trusted(_P0, _P1)
Q1 = QRational._trusted(_P1, _P1)


def qpow(k):
    """The monomial q**k as a field element."""
    return QRational._trusted(LaurentPoly.monomial(k), _P1)


@lru_cache(maxsize=None)
def qbracket(n):
    """Symmetric q-number: (q^n - q^-n) / (q - q^-1).  Always a Laurent polynomial."""
    num = LaurentPoly({n: 1}) - LaurentPoly({-n: 1})
    den = _Pq - LaurentPoly({-1: 1})
    return QRational.make(num, den)


@lru_cache(maxsize=None)
def qbrace(n):
    """Geometric q-number: (1 - q^n) / (1 - q).  Always a Laurent polynomial."""
    num = _P1 - LaurentPoly({n: 1})
    den = _P1 - _Pq
    return QRational.make(num, den)


def specialize(x, q0):
    """Exact rational value of x at q = q0; refuses q0 in {0, 1, -1}."""
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise ForbiddenSpecialization(f"q = {q0} is not allowed")
    d = x.den.evaluate(q0)
    if d == 0:
        raise PoleAtPoint(f"denominator vanishes at q = {q0}")
    return x.num.evaluate(q0) / d
