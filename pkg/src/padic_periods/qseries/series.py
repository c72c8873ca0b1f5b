"""Exact q-expansions with rational exponents and cyclotomic coefficients.

A QExpansion is a finite sum of terms c * t^e with e rational and c in
Q(zeta_12), together with a truncation order: the series is known modulo
t^order, and every stored exponent is below the order.  The variable records
which exponential t stands for, t = exp(2*pi*i*scale*z); series in different
variables never mix silently.  Truncation orders propagate pessimistically
through products, inverses and roots, so an order printed on a result is
always trustworthy.

Precomposition with an affine map z |-> (z + c)/k is the one place roots of
unity enter: t^e picks up exp(2*pi*i*scale*c*e/k), which must land in
Q(zeta_12) or the operation is refused.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import ONE as C_ONE
from .cyclotomic import ZERO as C_ZERO
from .cyclotomic import CycloNumber


class SeriesError(ArithmeticError):
    """A series operation's precondition failed."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected a rational number, got %r" % (x,))


def _coeff(x):
    if isinstance(x, CycloNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNumber((x, 0, 0, 0))
    raise TypeError("expected a rational or cyclotomic coefficient, got %r" % (x,))


@dataclass(frozen=True)
class Variable:
    """Formal symbol t = exp(2*pi*i*scale*z)."""

    name: str
    scale: Fraction
    max_denominator: int = 24

    def __post_init__(self):
        object.__setattr__(self, "scale", _frac(self.scale))
        if self.scale <= 0:
            raise ValueError("variable scale must be positive")

    def __repr__(self):
        return "Variable(%r, scale=%s)" % (self.name, self.scale)


# the two workhorses: q = e^{2 i pi z} and q = e^{i pi z}
Q_FULL = Variable("q", Fraction(1))
Q_HALF = Variable("t", Fraction(1, 2))
Q_THIRD = Variable("t3", Fraction(1, 3))


class QExpansion:
    """Truncated series sum_{e < order} terms[e] * t^e."""

    __slots__ = ("variable", "terms", "order")

    def __init__(self, variable, terms, order):
        order = _frac(order)
        clean = {}
        limit = variable.max_denominator
        for e, c in terms.items():
            e = _frac(e)
            c = _coeff(c)
            if e >= order or c.is_zero():
                continue
            if e.denominator > limit:
                raise SeriesError(
                    "exponent %s exceeds the denominator limit %d of %r"
                    % (e, limit, variable)
                )
            clean[e] = c
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    @classmethod
    def constant(cls, variable, value, order):
        return cls(variable, {Fraction(0): _coeff(value)}, order)

    @classmethod
    def monomial(cls, variable, coeff, exponent, order):
        return cls(variable, {_frac(exponent): _coeff(coeff)}, order)

    def is_zero(self):
        return not self.terms

    def valuation(self):
        """Leading exponent; for a series with no visible terms this is the
        truncation order (all that is known is f = O(t^order))."""
        return min(self.terms) if self.terms else self.order

    def leading_coefficient(self):
        if not self.terms:
            raise SeriesError("series has no terms below its truncation order")
        return self.terms[min(self.terms)]

    def coefficient(self, e):
        e = _frac(e)
        if e >= self.order:
            raise SeriesError(
                "coefficient of t^%s is beyond the truncation order %s" % (e, self.order)
            )
        return self.terms.get(e, C_ZERO)

    def truncated(self, order):
        order = min(_frac(order), self.order)
        return QExpansion(self.variable, self.terms, order)

    def _check_same_variable(self, other):
        if self.variable != other.variable:
            raise TypeError(
                "cannot mix series in %r and %r" % (self.variable, other.variable)
            )

    def matches(self, other):
        """Equality of every coefficient up to the smaller truncation order."""
        self._check_same_variable(other)
        order = min(self.order, other.order)
        return self.truncated(order).terms == other.truncated(order).terms

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.variable == other.variable
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variable, self.order, tuple(sorted(self.terms.items()))))

    def __neg__(self):
        return QExpansion(
            self.variable, {e: -c for e, c in self.terms.items()}, self.order
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            terms = dict(self.terms)
            terms[Fraction(0)] = terms.get(Fraction(0), C_ZERO) + _coeff(other)
            return QExpansion(self.variable, terms, self.order)
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check_same_variable(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, C_ZERO) + c
        return QExpansion(self.variable, terms, order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, QExpansion) else -_coeff(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            c0 = _coeff(other)
            return QExpansion(
                self.variable, {e: c * c0 for e, c in self.terms.items()}, self.order
            )
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check_same_variable(other)
        order = min(
            self.order + other.valuation(), other.order + self.valuation()
        )
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= order:
                    continue
                prod = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + prod
                else:
                    terms[e] = prod
        return QExpansion(self.variable, terms, order)

    __rmul__ = __mul__

    def inverse(self):
        if not self.terms:
            raise SeriesError("cannot invert a series with no visible terms")
        v = self.valuation()
        lead = self.terms[v]
        rel = self.order - v
        # f = lead * t^v * (1 + h); invert the unit part by geometric series
        h_terms = {
            e - v: c / lead for e, c in self.terms.items() if e != v
        }
        h = QExpansion(self.variable, h_terms, rel)
        one = QExpansion.constant(self.variable, 1, rel)
        acc = one
        if not h.is_zero():
            step = h.valuation()
            k = step
            sign = -1
            term = h
            while k < rel:
                acc = acc + (term if sign > 0 else -term)
                term = (term * h).truncated(rel)
                if term.is_zero():
                    break
                sign = -sign
                k += step
        inv_lead = C_ONE / lead
        terms = {e - v: c * inv_lead for e, c in acc.terms.items()}
        return QExpansion(self.variable, terms, rel - v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self * (C_ONE / _coeff(other))
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QExpansion.constant(self.variable, 1, self.order)
        if n == 0:
            return result
        base = self
        k = n
        while True:
            if k & 1:
                result = result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def nth_root(self, d):
        """Principal d-th root; the leading coefficient must be exactly 1."""
        if not isinstance(d, int) or d <= 0:
            raise SeriesError("root index must be a positive integer")
        if not self.terms:
            raise SeriesError("cannot take a root of a series with no visible terms")
        v = self.valuation()
        if self.terms[v] != C_ONE:
            raise SeriesError(
                "d-th root needs leading coefficient 1, got %r" % (self.terms[v],)
            )
        rel = self.order - v
        h_terms = {e - v: c for e, c in self.terms.items() if e != v}
        h = QExpansion(self.variable, h_terms, rel)
        # (1+h)^{1/d} by the generalized binomial series, exact over Q
        alpha = Fraction(1, d)
        acc = QExpansion.constant(self.variable, 1, rel)
        if not h.is_zero():
            step = h.valuation()
            power = h
            binom = alpha
            k = 1
            while k * step < rel:
                acc = acc + power * binom
                k += 1
                binom = binom * (alpha - (k - 1)) / k
                power = (power * h).truncated(rel)
                if power.is_zero():
                    break
        new_v = v / d
        terms = {e + new_v: c for e, c in acc.terms.items()}
        return QExpansion(self.variable, terms, rel + new_v)

    def precompose_affine(self, new_variable, k, c=0):
        """Series of z |-> f((z + c)/k) in the given variable.

        Each term t^e becomes exp(2*pi*i*scale*c*e/k) * s^(e*scale/(k*new_scale));
        the root of unity must lie in Q(zeta_12).
        """
        k = _frac(k)
        c = _frac(c)
        if k <= 0:
            raise SeriesError("affine precomposition needs a positive dilation")
        ratio = self.variable.scale / (k * new_variable.scale)
        terms = {}
        for e, coeff in self.terms.items():
            turn = self.variable.scale * c * e / k
            twelfth = 12 * turn
            if twelfth.denominator != 1:
                raise SeriesError(
                    "unit exp(2*pi*i*%s) falls outside Q(zeta_12)" % (turn,)
                )
            root = CycloNumber.zeta(12, twelfth.numerator % 12)
            terms[e * ratio] = coeff * root
        return QExpansion(new_variable, terms, self.order * ratio)

    def change_variable(self, new_variable):
        return self.precompose_affine(new_variable, 1, 0)

    def shift(self, c):
        """Series of z |-> f(z + c)."""
        return self.precompose_affine(self.variable, 1, c)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        parts = []
        for e, c in self.sorted_terms()[:8]:
            parts.append("(%s)*%s^(%s)" % (c, self.variable.name, e))
        if len(self.terms) > 8:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return "QExpansion(%s + O(%s^%s))" % (body, self.variable.name, self.order)
