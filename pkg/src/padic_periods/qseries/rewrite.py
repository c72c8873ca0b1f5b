"""Formal products of discriminant values and a two-axiom rewriting engine.

A term is a product  const * prod_i Delta(g_i z)^{e_i} * prod_j (c_j z + d_j)^{k_j}
with g_i rational matrices of positive determinant.  Two rules generate every
reduction used here:

    translation   Delta(w + 1) = Delta(w)
    inversion     Delta(-1/w)  = w^12 Delta(w)

Arguments are brought to an affine normal form Delta(s z + r), s > 0 and
0 <= r < 1, by a Euclidean descent on the first column of the matrix,
applying the inversion rule once per division step and collecting the
automorphy factors.  Every collected factor carries an exponent divisible
by 12, so the sign ambiguity of a matrix acting on the upper half plane
(g and -g act identically) drops out of the normal form.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "RewriteError",
    "ModularProduct",
    "delta_term",
    "linear_term",
    "constant_term",
    "RewriteCertificate",
    "CommutationRecord",
    "FunctionalEquationReport",
    "verify_functional_equation_u",
    "inversion_selftest",
]


class RewriteError(ArithmeticError):
    """The rewriting engine hit an input it cannot reduce."""


def _mat_mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _matrix_key(rows):
    """Canonical integer form of a rational matrix taken up to scalars:
    cleared denominators, divided content, first nonzero entry positive.
    The determinant must stay positive for the argument to live on the
    upper half plane."""
    (a, b), (c, d) = rows
    entries = [Fraction(x) for x in (a, b, c, d)]
    lcm = 1
    for x in entries:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    entries = [int(x * lcm) for x in entries]
    content = 0
    for x in entries:
        content = gcd(content, x)
    if content == 0:
        raise RewriteError("zero matrix has no action")
    entries = [x // content for x in entries]
    a, b, c, d = entries
    if a * d - b * c <= 0:
        raise RewriteError("matrix must have positive determinant")
    for x in entries:
        if x:
            if x < 0:
                entries = [-y for y in entries]
            break
    return tuple(entries)


def _split_linear(c, d):
    """(c z + d) = scalar * (c0 z + d0) with primitive integer (c0, d0)."""
    c, d = Fraction(c), Fraction(d)
    if c == 0 and d == 0:
        raise RewriteError("zero linear factor")
    lcm = c.denominator * d.denominator // gcd(c.denominator, d.denominator)
    ci, di = int(c * lcm), int(d * lcm)
    content = gcd(ci, di)
    scalar = Fraction(content, lcm)
    ci, di = ci // content, di // content
    if ci < 0 or (ci == 0 and di < 0):
        ci, di, scalar = -ci, -di, -scalar
    return (ci, di), scalar


def _push_linear(linear, pair, exponent):
    """Record (c z + d)^exponent in the factor map; returns the scalar
    absorbed into the constant.  Constant factors fold away entirely."""
    key, scalar = _split_linear(*pair)
    if key != (0, 1):
        linear[key] = linear.get(key, 0) + exponent
    return scalar ** exponent


def _format_matrix(key):
    if key[0] == "affine":
        return "affine(%s, %s)" % (key[1], key[2])
    return "[[%d, %d], [%d, %d]]" % key


def _reduce_delta(key):
    """Reduce a single Delta(matrix) to Delta(s z + r).

    Returns (affine key, linear factors, scalar, trace lines) for one copy
    of the factor; callers scale everything by the actual exponent.
    """
    if key[0] == "affine":
        return key, {}, Fraction(1), ["already reduced"]
    a, b, c, d = key
    lines = []
    linear = {}
    scalar = Fraction(1)
    guard = 0
    while c != 0:
        guard += 1
        if guard > 200:
            raise RewriteError("no normal form reached for %s" % (key,))
        q = a // c
        if q:
            a, b = a - q * c, b - q * d
            lines.append("translation x%d" % q)
        a, b, c, d = c, d, -a, -b
        scalar *= _push_linear(linear, (a, b), 12)
        scalar *= _push_linear(linear, (c, d), -12)
        lines.append("inversion with factor ((%dz%+d)/(%dz%+d))^12" % (a, b, c, d))
    if a < 0:
        a, b, d = -a, -b, -d
        lines.append("sign fold")
    s = Fraction(a, d)
    r = Fraction(b, d)
    shift = r.numerator // r.denominator
    if shift:
        r -= shift
        lines.append("translation x%d" % shift)
    if not lines:
        lines.append("affine")
    return ("affine", s, r), linear, scalar, lines


class ModularProduct:
    """constant * prod Delta(arg)^e * prod (c z + d)^k with exact bookkeeping.

    Delta arguments are stored as canonical integer matrices, or as the
    triple ("affine", s, r) once reduced to Delta(s z + r) with r in [0, 1).
    Equality is literal; compare normal forms to compare functions.
    """

    __slots__ = ("coefficient", "delta", "linear")

    def __init__(self, coefficient=1, delta=None, linear=None):
        self.coefficient = Fraction(coefficient)
        if not self.coefficient:
            raise RewriteError("vanishing constant factor")
        self.delta = {k: e for k, e in (delta or {}).items() if e}
        self.linear = {k: e for k, e in (linear or {}).items() if e}

    def __mul__(self, other):
        if not isinstance(other, ModularProduct):
            return NotImplemented
        delta = dict(self.delta)
        for k, e in other.delta.items():
            delta[k] = delta.get(k, 0) + e
        linear = dict(self.linear)
        for k, e in other.linear.items():
            linear[k] = linear.get(k, 0) + e
        return ModularProduct(self.coefficient * other.coefficient, delta, linear)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return ModularProduct(
            self.coefficient ** n,
            {k: e * n for k, e in self.delta.items()},
            {k: e * n for k, e in self.linear.items()},
        )

    def inverse(self):
        return self ** -1

    def reduce(self):
        """Normal form plus the axiom applications that got there."""
        coefficient = self.coefficient
        delta = {}
        linear = dict(self.linear)
        trace = []
        for key in sorted(self.delta, key=repr):
            e = self.delta[key]
            akey, lin, scal, lines = _reduce_delta(key)
            delta[akey] = delta.get(akey, 0) + e
            for k, ee in lin.items():
                linear[k] = linear.get(k, 0) + ee * e
            coefficient *= scal ** e
            trace.append("Delta(%s)^%d: %s" % (_format_matrix(key), e, "; ".join(lines)))
        return ModularProduct(coefficient, delta, linear), tuple(trace)

    def normal_form(self):
        return self.reduce()[0]

    def __eq__(self, other):
        if not isinstance(other, ModularProduct):
            return NotImplemented
        return (
            self.coefficient == other.coefficient
            and self.delta == other.delta
            and self.linear == other.linear
        )

    __hash__ = None

    def __repr__(self):
        parts = [str(self.coefficient)]
        for k in sorted(self.delta, key=repr):
            parts.append("Delta(%s)^%d" % (_format_matrix(k), self.delta[k]))
        for k in sorted(self.linear, key=repr):
            parts.append("(%dz%+d)^%d" % (k[0], k[1], self.linear[k]))
        return " * ".join(parts)


def delta_term(rows, exponent=1):
    """Delta evaluated on a rational matrix argument, as a formal factor."""
    return ModularProduct(1, {_matrix_key(rows): exponent}, {})


def linear_term(c, d, exponent):
    """(c z + d)^exponent as a formal factor."""
    linear = {}
    scalar = _push_linear(linear, (c, d), exponent)
    return ModularProduct(scalar, {}, linear)


def constant_term(value):
    return ModularProduct(value, {}, {})


@dataclass(frozen=True, eq=False)
class RewriteCertificate:
    label: str
    left: ModularProduct
    right: ModularProduct
    left_normal: ModularProduct
    right_normal: ModularProduct
    equal: bool
    trace: tuple


def _certify(label, left, right):
    left_normal, left_trace = left.reduce()
    right_normal, right_trace = right.reduce()
    trace = tuple("left: " + line for line in left_trace)
    trace += tuple("right: " + line for line in right_trace)
    return RewriteCertificate(
        label, left, right, left_normal, right_normal, left_normal == right_normal, trace
    )


@dataclass(frozen=True)
class CommutationRecord:
    """The halving map z -> (z+1)/2 commutes with z -> -1/(pz) up to a
    level group element: sigma w_p = gamma (w_p sigma) with gamma below."""

    matrix: tuple
    prime: int
    determinant: int
    lower_left_divisible: bool
    identity_holds: bool

    @property
    def in_level_group(self):
        return self.determinant == 1 and self.lower_left_divisible


@dataclass(frozen=True, eq=False)
class FunctionalEquationReport:
    prime: int
    root_exponent: int
    p_exponent: int
    u_certificate: RewriteCertificate
    mu_certificate: RewriteCertificate
    commutation: CommutationRecord

    @property
    def verified(self):
        return (
            self.u_certificate.equal
            and self.mu_certificate.equal
            and self.commutation.identity_holds
            and self.commutation.in_level_group
        )


def _p_valuation(value, p):
    value = Fraction(value)
    v = 0
    n = value.numerator
    while n % p == 0:
        n //= p
        v += 1
    m = value.denominator
    while m % p == 0:
        m //= p
        v -= 1
    return v


def verify_functional_equation_u(p):
    """Certify u(-1/(pz))^d = p^-12 u(z)^-d and its halving-map companion.

    d = gcd(p-1, 12), so u^d = Delta(pz)/Delta(z) is a ratio of
    discriminants and both identities become statements about formal Delta
    products.  Each side is reduced with the translation and inversion
    axioms and the normal forms are compared literally.  The companion
    identity (mu(-1/(pz)) mu(z))^d = p^-12 reduces to a bare constant, all
    eight Delta factors cancelling in pairs; the matrix conjugating the
    halving map across z -> -1/(pz) is recorded alongside, with the checks
    that it lies in the level group.  The reported p exponent is the
    exponent of p in the certified constant divided by d.
    """
    if not isinstance(p, int) or p < 5:
        raise ValueError("need an integer p >= 5")
    d = gcd(p - 1, 12)
    one = ((1, 0), (0, 1))
    wp = ((0, -1), (p, 0))
    scale = ((p, 0), (0, 1))
    sigma = ((1, 1), (0, 2))

    lhs = delta_term(_mat_mul(scale, wp)) * delta_term(wp, -1)
    rhs = (
        constant_term(Fraction(1, p ** 12))
        * delta_term(one)
        * delta_term(scale, -1)
    )
    u_certificate = _certify("u(-1/(pz))^d == p^-12 u(z)^-d", lhs, rhs)

    exponent = _p_valuation(u_certificate.left_normal.coefficient, p)
    if exponent % d:
        raise RewriteError("certified constant is not a d-th power of p")
    p_exponent = exponent // d

    sigma_wp = _mat_mul(sigma, wp)
    lhs_mu = (
        delta_term(_mat_mul(scale, sigma_wp), 2)
        * delta_term(sigma_wp, -2)
        * delta_term(_mat_mul(scale, wp), -1)
        * delta_term(wp)
        * delta_term(_mat_mul(scale, sigma), 2)
        * delta_term(sigma, -2)
        * delta_term(scale, -1)
        * delta_term(one)
    )
    mu_certificate = _certify(
        "(mu(-1/(pz)) mu(z))^d == p^-12", lhs_mu, constant_term(Fraction(1, p ** 12))
    )

    half = (p + 1) // 2
    comm = ((half, 1), (p, 2))
    commutation = CommutationRecord(
        matrix=comm,
        prime=p,
        determinant=half * 2 - p,
        lower_left_divisible=comm[1][0] % p == 0,
        identity_holds=_mat_mul(comm, _mat_mul(wp, sigma)) == _mat_mul(sigma, wp),
    )

    return FunctionalEquationReport(
        prime=p,
        root_exponent=d,
        p_exponent=p_exponent,
        u_certificate=u_certificate,
        mu_certificate=mu_certificate,
        commutation=commutation,
    )


def inversion_selftest():
    """Apply the inversion axiom across itself.

    Delta(-1/(-1/z)) must come back to Delta(z): once reducing the
    composite argument, once spelling out the automorphy factor
    (-1/z)^12 = z^-12 of the outer application by hand.  Returns the
    certificate; both normal forms must be the bare Delta(z).
    """
    s_mat = ((0, -1), (1, 0))
    composite = delta_term(_mat_mul(s_mat, s_mat))
    spelled = linear_term(1, 0, -12) * delta_term(s_mat)
    certificate = _certify("Delta(-1/(-1/z)) == Delta(z)", composite, spelled)
    target = delta_term(((1, 0), (0, 1))).normal_form()
    ok = (
        certificate.equal
        and certificate.left_normal == target
        and certificate.right_normal == target
    )
    return certificate, ok
