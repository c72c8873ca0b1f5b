"""Exact arithmetic in F_{p^2}, in the unramified quadratic extension K of
Q_p, and in the residual group Z x F_{p^2}^* = K^* / (1 + maximal ideal).

F_{p^2} is realized as F_p[x]/(x^2 - n) with n the least positive quadratic
nonresidue mod p.  Elements of K are stored as p^val * (unit digits), the
unit being a pair of integers mod p^m; the absolute precision val + m is
propagated pessimistically through arithmetic.
"""

from fractions import Fraction
from functools import lru_cache


class PrecisionError(ArithmeticError):
    """An operation needed more p-adic precision than the operand carries."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m):
    """Deterministic Miller-Rabin, valid far beyond the ranges used here."""
    if m < 2:
        return False
    for q in _SMALL_PRIMES:
        if m % q == 0:
            return m == q
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        y = pow(a, d, m)
        if y in (1, m - 1):
            continue
        for _ in range(s - 1):
            y = y * y % m
            if y == m - 1:
                break
        else:
            return False
    return True


def legendre(a, p):
    """Legendre symbol of a mod p in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(p):
    """Least positive quadratic nonresidue mod p; also validates p >= 5 prime."""
    if p < 5 or not is_prime(p):
        raise ValueError("context prime must be a prime >= 5, got %r" % (p,))
    for n in range(2, p):
        if legendre(n, p) == -1:
            return n
    raise AssertionError("no nonresidue found; p is not prime")


def sqrt_mod_p(a, p):
    """A square root of a mod p via Tonelli-Shanks; raises if a is not a QR."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError("%d is not a quadratic residue mod %d" % (a, p))
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    m = s
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


class Fp2Element:
    """a + b*x in F_p[x]/(x^2 - n), n the least nonresidue mod p."""

    __slots__ = ("p", "n", "a", "b")

    def __init__(self, p, a, b, n=None):
        self.p = p
        self.n = least_nonresidue(p) if n is None else n
        self.a = a % p
        self.b = b % p

    def _check(self, other):
        if not isinstance(other, Fp2Element):
            if isinstance(other, int):
                return Fp2Element(self.p, other, 0, self.n)
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed primes %d and %d" % (self.p, other.p))
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp2Element(self.p, self.a + other.a, self.b + other.b, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Fp2Element(self.p, -self.a, -self.b, self.n)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp2Element(self.p, self.a - other.a, self.b - other.b, self.n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d, n = self.a, self.b, other.a, other.b, self.n
        return Fp2Element(self.p, a * c + n * b * d, a * d + b * c, self.n)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        nrm = self.norm()
        inv = pow(nrm, self.p - 2, self.p)
        return Fp2Element(self.p, self.a * inv, -self.b * inv, self.n)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Fp2Element(self.p, 1, 0, self.n)
        acc = self
        while k:
            if k & 1:
                result = result * acc
            acc = acc * acc
            k >>= 1
        return result

    def frobenius(self):
        """The p-power map a + bx -> a - bx (x^p = -x since n is a nonresidue)."""
        return Fp2Element(self.p, self.a, -self.b, self.n)

    def norm(self):
        """Norm to F_p: a^2 - n b^2, equal to self**(p+1) as an integer."""
        return (self.a * self.a - self.n * self.b * self.b) % self.p

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.p
        if not isinstance(other, Fp2Element):
            return NotImplemented
        return (self.p, self.a, self.b) == (other.p, other.a, other.b)

    def __hash__(self):
        return hash((self.p, self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return "%d" % self.a
        return "%d+%d*x" % (self.a, self.b)

    def key(self):
        """Lexicographic sort key (a, b)."""
        return (self.a, self.b)


def fp2_make(p, a, b):
    """Canonical F_{p^2} element a + b*x; validates the prime context."""
    least_nonresidue(p)
    return Fp2Element(p, a, b)


def fp2_frobenius(e):
    return e.frobenius()


class ResidualClass:
    """Element (val, res) of Z x F_{p^2}^*, the value group of K^* modulo
    principal units.  The residue component must be nonzero."""

    __slots__ = ("val", "res")

    def __init__(self, val, res):
        if res.is_zero():
            raise ValueError("residual class needs a nonzero residue")
        self.val = val
        self.res = res

    def __mul__(self, other):
        return ResidualClass(self.val + other.val, self.res * other.res)

    def inverse(self):
        return ResidualClass(-self.val, self.res.inverse())

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if k == 0:
            one = Fp2Element(self.res.p, 1, 0, self.res.n)
            return ResidualClass(0, one)
        return ResidualClass(self.val * k, self.res**k)

    def __eq__(self, other):
        if not isinstance(other, ResidualClass):
            return NotImplemented
        return self.val == other.val and self.res == other.res

    def __hash__(self):
        return hash((self.val, self.res))

    def __repr__(self):
        return "(%d, %r)" % (self.val, self.res)

    def frobenius(self):
        return ResidualClass(self.val, self.res.frobenius())


def residual_mul(c1, c2):
    return c1 * c2


def residual_inv(c):
    return c.inverse()


def residual_pow(c, k):
    return c**k


class PadicElement:
    """p^val * (ua + ub*x) in K, the unit known mod p^m (m = relprec >= 1).

    Absolute precision is val + relprec.  A value all of whose known digits
    vanish is stored with unit None and is only known to be 0 at its
    absolute precision; most operations on it raise PrecisionError.
    """

    __slots__ = ("p", "n", "val", "ua", "ub", "relprec")

    def __init__(self, p, val, ua, ub, relprec, n=None):
        self.p = p
        self.n = least_nonresidue(p) if n is None else n
        if relprec < 1:
            raise PrecisionError("unit part needs at least one digit")
        pm = p**relprec
        ua %= pm
        ub %= pm
        if ua % p == 0 and ub % p == 0:
            raise ValueError("unit part %r is not a unit" % ((ua, ub),))
        self.val = val
        self.ua = ua
        self.ub = ub
        self.relprec = relprec

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, q, p, abs_prec, n=None):
        """Embed a rational (or int) with the given absolute precision."""
        q = Fraction(q)
        if q == 0:
            return PadicZero(p, abs_prec, n)
        num, den = q.numerator, q.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        m = abs_prec - v
        if m < 1:
            return PadicZero(p, abs_prec, n)
        pm = p**m
        ua = num * pow(den, -1, pm) % pm
        return cls(p, v, ua, 0, m, n)

    @classmethod
    def from_fp2(cls, e, abs_prec):
        """Lift of an F_{p^2} element with valuation 0 (plain digit lift)."""
        if e.is_zero():
            return PadicZero(e.p, abs_prec, e.n)
        return cls(e.p, 0, e.a, e.b, abs_prec, e.n)

    # -- structure ------------------------------------------------------

    @property
    def abs_prec(self):
        return self.val + self.relprec

    def is_zero_at_precision(self):
        return False

    def _unit(self):
        return self.ua, self.ub

    def _align(self, other):
        if not isinstance(other, PadicElement):
            other = PadicElement.from_rational(other, self.p, self.abs_prec, self.n)
        if other.p != self.p:
            raise ValueError("mixed primes")
        return other

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._align(other)
        if other.is_zero_at_precision():
            return _add_zero(self, other)
        p = self.p
        m_abs = min(self.abs_prec, other.abs_prec)
        v = min(self.val, other.val)
        m = m_abs - v
        if m < 1:
            return PadicZero(p, m_abs, self.n)
        pm = p**m
        ua = (self.ua * p ** (self.val - v) + other.ua * p ** (other.val - v)) % pm
        ub = (self.ub * p ** (self.val - v) + other.ub * p ** (other.val - v)) % pm
        return _normalize(p, self.n, v, ua, ub, m)

    __radd__ = __add__

    def __neg__(self):
        return PadicElement(self.p, self.val, -self.ua, -self.ub, self.relprec, self.n)

    def __sub__(self, other):
        other = self._align(other)
        if other.is_zero_at_precision():
            return _add_zero(self, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._align(other)
        if other.is_zero_at_precision():
            return PadicZero(self.p, self.val + other.abs_prec, self.n)
        p, n = self.p, self.n
        m = min(self.relprec, other.relprec)
        pm = p**m
        a, b, c, d = self.ua, self.ub, other.ua, other.ub
        ua = (a * c + n * b * d) % pm
        ub = (a * d + b * c) % pm
        return PadicElement(p, self.val + other.val, ua, ub, m, n)

    __rmul__ = __mul__

    def inverse(self):
        p, m, n = self.p, self.relprec, self.n
        pm = p**m
        nrm = (self.ua * self.ua - n * self.ub * self.ub) % pm
        inv = pow(nrm, -1, pm)
        return PadicElement(p, -self.val, self.ua * inv, -self.ub * inv, m, n)

    def __truediv__(self, other):
        other = self._align(other)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = PadicElement(self.p, 0, 1, 0, self.relprec, self.n)
        acc = self
        while k:
            if k & 1:
                result = result * acc
            acc = acc * acc
            k >>= 1
        return result

    def frobenius(self):
        """Lift of the residue Frobenius: x -> -x on the unit digits."""
        return PadicElement(self.p, self.val, self.ua, -self.ub, self.relprec, self.n)

    # -- views ------------------------------------------------------------

    def unit_reduction(self):
        """Reduction of the unit part to F_{p^2}."""
        return Fp2Element(self.p, self.ua, self.ub, self.n)

    def __eq__(self, other):
        """Agreement at the shared precision."""
        if not isinstance(other, PadicElement):
            other = self._align(other)
        if other.is_zero_at_precision() or self.is_zero_at_precision():
            d = other if self.is_zero_at_precision() else self
            z = self if self.is_zero_at_precision() else other
            return d.val >= z.abs_prec if not d.is_zero_at_precision() else True
        if self.val != other.val:
            return False
        m = min(self.relprec, other.relprec)
        pm = self.p**m
        return (self.ua - other.ua) % pm == 0 and (self.ub - other.ub) % pm == 0

    def __hash__(self):
        raise TypeError("capped-precision elements are not hashable")

    def __repr__(self):
        return "p^%d*(%d+%d*x) + O(p^%d)" % (self.val, self.ua, self.ub, self.abs_prec)


class PadicZero(PadicElement):
    """A value indistinguishable from 0 at its absolute precision."""

    def __init__(self, p, abs_prec, n=None):
        self.p = p
        self.n = least_nonresidue(p) if n is None else n
        self.val = abs_prec
        self.ua = 0
        self.ub = 0
        self.relprec = 0

    @property
    def abs_prec(self):
        return self.val

    def is_zero_at_precision(self):
        return True

    def __add__(self, other):
        other = self._align(other)
        return _add_zero(other, self)

    __radd__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._align(other)
        if other.is_zero_at_precision():
            return PadicZero(self.p, self.val + other.val, self.n)
        return PadicZero(self.p, self.val + other.val, self.n)

    __rmul__ = __mul__

    def inverse(self):
        raise PrecisionError("cannot invert a value indistinguishable from 0")

    def __pow__(self, k):
        if k == 0:
            raise PrecisionError("0^0 at finite precision")
        if k < 0:
            raise PrecisionError("cannot invert a value indistinguishable from 0")
        return PadicZero(self.p, self.val * k, self.n)

    def frobenius(self):
        return self

    def unit_reduction(self):
        raise PrecisionError("no unit part: value is 0 at precision %d" % self.val)

    def __repr__(self):
        return "O(p^%d)" % self.val


def _add_zero(x, z):
    """x + (0 at precision z.abs_prec), pessimistic precision."""
    if x.is_zero_at_precision():
        return PadicZero(x.p, min(x.abs_prec, z.abs_prec), x.n)
    m_abs = min(x.abs_prec, z.abs_prec)
    if x.val >= m_abs:
        return PadicZero(x.p, m_abs, x.n)
    return PadicElement(x.p, x.val, x.ua, x.ub, m_abs - x.val, x.n)


def _normalize(p, n, v, ua, ub, m):
    """Renormalize digits after addition: extract p-powers from the unit."""
    shift = 0
    while shift < m and ua % p == 0 and ub % p == 0:
        ua //= p
        ub //= p
        shift += 1
    if shift >= m:
        return PadicZero(p, v + m, n)
    return PadicElement(p, v + shift, ua, ub, m - shift, n)


def padic_reduce(e):
    """Reduction of an integral element to F_{p^2}; valuation must be >= 0."""
    if e.is_zero_at_precision():
        if e.abs_prec < 1:
            raise PrecisionError("need absolute precision >= 1 to reduce")
        return Fp2Element(e.p, 0, 0, e.n)
    if e.val < 0:
        raise ValueError("cannot reduce an element of negative valuation")
    if e.val > 0:
        return Fp2Element(e.p, 0, 0, e.n)
    return e.unit_reduction()


def residual_of(e):
    """Class of e in Z x F_{p^2}^*; needs precision strictly past the valuation."""
    if e.is_zero_at_precision():
        raise PrecisionError(
            "no residual class: value indistinguishable from 0 at O(p^%d)" % e.abs_prec
        )
    return ResidualClass(e.val, e.unit_reduction())


def teichmuller_lift(e, abs_prec):
    """The Teichmuller representative over a nonzero residue: the unique lift
    t with t^(p^2) = t.  Computed by iterating the p^2-power map."""
    if e.is_zero():
        raise ValueError("Teichmuller lift needs a nonzero residue")
    t = PadicElement.from_fp2(e, abs_prec)
    for _ in range(abs_prec):
        t = t ** (e.p * e.p)
    return t


def rational_valuation(q, p):
    """v_p of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def residual_of_rational(q, p):
    """Residual class of a nonzero rational (residue lands in F_p)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("residual class of 0")
    v = rational_valuation(q, p)
    unit = q / Fraction(p) ** v
    res = unit.numerator * pow(unit.denominator, -1, p) % p
    return ResidualClass(v, fp2_make(p, res, 0))
