"""Exact arithmetic in Q(zeta_12).

Every coefficient that can appear in the q-expansions of this package lives
in a cyclotomic field Q(zeta_m) with m dividing 12, so a single dense
representation suffices: coordinates over Q in the power basis
(1, w, w^2, w^3) with w = zeta_12 = exp(2*pi*i/12) and minimal polynomial
w^4 = w^2 - 1.  The usual roots of unity sit at

    zeta_3 = w^4 = w^2 - 1,   i = zeta_4 = w^3,   zeta_6 = w^2,
    -1 = w^6.

Inversion runs the extended Euclidean algorithm against x^4 - x^2 + 1.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

# x^4 - x^2 + 1, low degree first
_MIN_POLY = (_ONE, _ZERO, -_ONE, _ZERO, _ONE)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("cyclotomic coordinates must be rational, got %r" % (x,))


class CycloNumber:
    """An element of Q(zeta_12) with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords=(0, 0, 0, 0)):
        if len(coords) != 4:
            raise ValueError("need 4 coordinates in basis 1, w, w^2, w^3")
        object.__setattr__(self, "coords", tuple(_as_fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def from_rational(cls, x):
        return cls((_as_fraction(x), 0, 0, 0))

    @classmethod
    def zeta(cls, n, power=1):
        """exp(2*pi*i*power/n) for n dividing 12."""
        if n <= 0 or 12 % n != 0:
            raise ValueError("only roots of unity of order dividing 12, got n=%r" % (n,))
        return _W_POWERS[(12 // n) * power % 12]

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return self.coords[1] == 0 and self.coords[2] == 0 and self.coords[3] == 0

    def rational(self):
        if not self.is_rational():
            raise ValueError("%r is not rational" % (self,))
        return self.coords[0]

    def field_order(self):
        """Smallest m in {1, 3, 4, 12} with self in Q(zeta_m)."""
        a0, a1, a2, a3 = self.coords
        if a1 == 0 and a3 == 0:
            return 1 if a2 == 0 else 3
        if a1 == 0 and a2 == 0:
            return 4
        return 12

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __neg__(self):
        return CycloNumber(tuple(-c for c in self.coords))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coords, other.coords
        return CycloNumber((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coords, other.coords
        # rational fast path; almost every coefficient in practice is rational
        if a[1] == 0 and a[2] == 0 and a[3] == 0:
            r = a[0]
            return CycloNumber((r * b[0], r * b[1], r * b[2], r * b[3]))
        if b[1] == 0 and b[2] == 0 and b[3] == 0:
            r = b[0]
            return CycloNumber((r * a[0], r * a[1], r * a[2], r * a[3]))
        c = [_ZERO] * 7
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    c[i + j] += ai * bj
        # w^4 = w^2 - 1, w^5 = w^3 - w, w^6 = -1
        return CycloNumber(
            (c[0] - c[4] - c[6], c[1] - c[5], c[2] + c[4], c[3] + c[5])
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_12)")
        if self.is_rational():
            return CycloNumber((1 / self.coords[0], 0, 0, 0))
        # extended gcd of self (as a polynomial in w) with the minimal
        # polynomial; the gcd is a nonzero constant since x^4 - x^2 + 1 is
        # irreducible over Q
        r0, s0 = list(_MIN_POLY), [_ZERO]
        r1, s1 = _poly_trim(list(self.coords)), [_ONE]
        while True:
            r1 = _poly_trim(r1)
            if len(r1) == 1:
                break
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        inv = (inv + [_ZERO] * 4)[:4]
        return CycloNumber(tuple(inv))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = ONE
        k = abs(n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        if self.is_rational():
            return "CycloNumber(%s)" % (self.coords[0],)
        parts = []
        for c, name in zip(self.coords, ("1", "w", "w^2", "w^3")):
            if c != 0:
                parts.append("%s*%s" % (c, name) if name != "1" else str(c))
        return "CycloNumber(%s)" % " + ".join(parts)


def _coerce(x):
    if isinstance(x, CycloNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNumber((x, 0, 0, 0))
    return NotImplemented


def _poly_trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _poly_sub(f, g):
    n = max(len(f), len(g))
    f = list(f) + [_ZERO] * (n - len(f))
    g = list(g) + [_ZERO] * (n - len(g))
    return _poly_trim([a - b for a, b in zip(f, g)])


def _poly_mul(f, g):
    out = [_ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(f, g):
    f = list(f)
    g = _poly_trim(g)
    q = [_ZERO] * max(1, len(f) - len(g) + 1)
    while len(f) >= len(g) and any(c != 0 for c in f):
        f = _poly_trim(f)
        if len(f) < len(g):
            break
        coef = f[-1] / g[-1]
        deg = len(f) - len(g)
        q[deg] = coef
        for i, b in enumerate(g):
            f[deg + i] -= coef * b
        f = _poly_trim(f)
    return _poly_trim(q), _poly_trim(f)


ZERO = CycloNumber((0, 0, 0, 0))
ONE = CycloNumber((1, 0, 0, 0))

_W_POWERS = []
_w = CycloNumber((0, 1, 0, 0))
_acc = ONE
for _ in range(12):
    _W_POWERS.append(_acc)
    _acc = _acc * _w
del _w, _acc
