"""q-expansions of the classical players: eta, Delta, lambda, u, mu, H.

Conventions, fixed once:

- eta and Delta = eta^24 expand in q = exp(2*pi*i*z).
- lambda expands in q = exp(i*pi*z), leading term 16q.
- u(z) = (Delta(pz)/Delta(z))^(1/d) with d = gcd(p-1, 12) expands in
  q = exp(2*pi*i*z) with integer exponents and leading coefficient 1, since
  the d-th root is taken in the closed product form.
- mu(z) = u((z+1)/2)^2 / u(z) expands in t = exp(i*pi*z); the substitution
  (z+1)/2 turns q into -t.
- mu3(z) = u((z+2)/3)^3 / u(z) expands in t = exp(2*pi*i*z/3) and needs
  Q(zeta_3) coefficients, because (z+2)/3 turns q into zeta_3^2 * t.
- H is the cube of an eta quotient in the rotated variable w = z/(1-z) and
  expands in exp(2*pi*i*w/3) with integer exponents; nothing is claimed
  about H anywhere else.

The leading constants of mu and mu3 at infinity are computed, reported, and
deliberately not given a closed form here.
"""

from fractions import Fraction
from math import gcd

from .cyclotomic import ONE as C_ONE
from .cyclotomic import CycloNumber
from .series import Q_FULL, Q_HALF, Q_THIRD, QExpansion, SeriesError, Variable

# variable of the rotated expansion of H: exp(2*pi*i*w/3) for w = z/(1-z)
W_THIRD = Variable("s3", Fraction(1, 3))


def _binomial_factor(variable, coeff, exponent, power, order):
    """(1 + coeff * t^exponent)^power as an exact series, integer power."""
    exponent = Fraction(exponent)
    terms = {Fraction(0): C_ONE}
    k = 1
    binom = Fraction(power)
    c_pow = _ascoeff(coeff)
    while k * exponent < order:
        terms[k * exponent] = binom * c_pow
        k += 1
        binom = binom * Fraction(power - k + 1, k)
        c_pow = c_pow * _ascoeff(coeff)
    return QExpansion(variable, terms, order)


def _ascoeff(x):
    return x if isinstance(x, CycloNumber) else CycloNumber((Fraction(x), 0, 0, 0))


def euler_product(variable, ratio, order):
    """prod_{i>=1} (1 - t^(ratio*i)) to the requested order."""
    ratio = Fraction(ratio)
    result = QExpansion.constant(variable, 1, order)
    i = 1
    while ratio * i < order:
        result = result * QExpansion(
            variable, {Fraction(0): 1, ratio * i: -1}, order
        )
        i += 1
    return result


def eta_expansion(order, variable=Q_FULL, ratio=Fraction(1)):
    """eta(ratio * z) = Q^(1/24) prod (1 - Q^i) with Q = t^(ratio/scale_ratio).

    With the default variable this is the classical expansion in
    q = exp(2*pi*i*z).  `ratio` rescales the argument: the series of
    eta(ratio*z) in the given variable, provided the exponents stay rational
    with denominator at most 24.
    """
    if order < 1:
        raise SeriesError("eta expansion needs order >= 1")
    r = Fraction(ratio) / variable.scale
    lead = r / 24
    body = euler_product(variable, r, Fraction(order))
    return QExpansion.monomial(variable, 1, lead, Fraction(order) + lead) * body


def discriminant_expansion(order, variable=Q_FULL, ratio=Fraction(1)):
    """Delta(ratio*z) = eta(ratio*z)^24."""
    return eta_expansion(order, variable, ratio) ** 24


def lambda_expansion(order):
    """lambda(z) = 16 q prod ((1+q^{2n})/(1+q^{2n-1}))^8 in q = exp(i*pi*z)."""
    if order < 1:
        raise SeriesError("lambda expansion needs order >= 1")
    order = Fraction(order)
    prod = QExpansion.constant(Q_HALF, 1, order)
    n = 1
    while 2 * n - 1 < order:
        prod = prod * _binomial_factor(Q_HALF, 1, 2 * n, 8, order)
        prod = prod * _binomial_factor(Q_HALF, 1, 2 * n - 1, -8, order)
        n += 1
    return (QExpansion.monomial(Q_HALF, 16, 1, order + 1) * prod).truncated(order + 1)


def lambda_eta_quotient(order):
    """The same function as 16 * eta(z/2)^8 eta(2z)^16 / eta(z)^24.

    An independent expansion path used to check the product formula.
    """
    order = Fraction(order) + 1
    a = eta_expansion(order, Q_HALF, Fraction(1, 2)) ** 8
    b = eta_expansion(order, Q_HALF, Fraction(2)) ** 16
    c = eta_expansion(order, Q_HALF, Fraction(1)) ** 24
    return (a * b * 16 / c).truncated(order)


def unit_group_exponent(p):
    """d = gcd(p-1, 12)."""
    return gcd(p - 1, 12)


def _check_p(p):
    if not isinstance(p, int) or p < 5:
        raise ValueError("p must be a prime >= 5, got %r" % (p,))


def u_product(p, order, variable=Q_FULL, q_coeff=1, q_exponent=Fraction(1)):
    """u with q replaced by q_coeff * t^q_exponent, built factor by factor.

    u(z) = q^((p-1)/d) prod_n ((1 - q^(p n))/(1 - q^n))^(24/d); the d-th
    root is already taken in this closed form, so exponents stay integral
    multiples of q_exponent.
    """
    _check_p(p)
    d = unit_group_exponent(p)
    e = 24 // d
    lead_exp = Fraction(p - 1, d) * q_exponent
    order = Fraction(order)
    inner = order - lead_exp
    if inner <= 0:
        raise SeriesError("order %s is too small to see u's leading term" % (order,))
    prod = QExpansion.constant(variable, 1, inner)
    c = _ascoeff(q_coeff)
    n = 1
    while n * q_exponent < inner:
        cn = c ** n
        prod = prod * _binomial_factor(variable, -(cn ** p), p * n * q_exponent, e, inner)
        prod = prod * _binomial_factor(variable, -cn, n * q_exponent, -e, inner)
        n += 1
    lead_coeff = c ** ((p - 1) // d)
    return QExpansion.monomial(variable, lead_coeff, lead_exp, order) * prod


def u_expansion(p, order):
    """u(z) = (Delta(pz)/Delta(z))^(1/d) in q = exp(2*pi*i*z)."""
    return u_product(p, order)


def u_root_oracle(p, order):
    """u recomputed as the literal d-th root of Delta(pz)/Delta(z)."""
    _check_p(p)
    d = unit_group_exponent(p)
    order = Fraction(order)
    top = discriminant_expansion(order, Q_FULL, Fraction(p))
    bottom = discriminant_expansion(order, Q_FULL, Fraction(1))
    return (top / bottom).nth_root(d).truncated(order)


def mu_expansion(p, order, cross_check=False):
    """mu(z) = u((z+1)/2)^2 / u(z) in t = exp(i*pi*z).

    With cross_check=True the numerator and denominator are rebuilt factor
    by factor with q already replaced, and the two results are compared.
    """
    _check_p(p)
    d = unit_group_exponent(p)
    order = Fraction(order)
    inner = order + 2 * Fraction(p - 1, d) + 2
    u = u_product(p, inner)
    numerator = u.precompose_affine(Q_HALF, 2, 1)
    denominator = u.precompose_affine(Q_HALF, 1, 0)
    mu = (numerator ** 2 / denominator).truncated(order)
    if cross_check:
        direct_num = u_product(p, inner, Q_HALF, q_coeff=-1, q_exponent=Fraction(1))
        direct_den = u_product(p, 2 * inner, Q_HALF, q_coeff=1, q_exponent=Fraction(2))
        direct = (direct_num ** 2 / direct_den).truncated(order)
        if not mu.matches(direct):
            raise SeriesError("mu expansions disagree between the two routes")
    return mu


def mu3_expansion(p, order, rational_only=False):
    """mu3(z) = u((z+2)/3)^3 / u(z) in t = exp(2*pi*i*z/3).

    The substitution (z+2)/3 sends q to zeta_3^2 * t, so coefficients live
    in Q(zeta_3); a rational-only request is refused.
    """
    _check_p(p)
    if rational_only:
        raise SeriesError(
            "mu3 needs coefficients in Q(zeta_3); rational-only was requested"
        )
    d = unit_group_exponent(p)
    order = Fraction(order)
    inner = order + 3 * Fraction(p - 1, d) + 3
    u = u_product(p, inner)
    numerator = u.precompose_affine(Q_THIRD, 3, 2)
    denominator = u.precompose_affine(Q_THIRD, 1, 0)
    return (numerator ** 3 / denominator).truncated(order)


def h3_expansion(order):
    """H = (eta(w/3)/eta(3w))^3 in exp(2*pi*i*w/3), w = z/(1-z).

    The leading term is the simple pole s^-1; exponents are integers, so in
    powers of exp(2*pi*i*w) they lie in (1/3)Z.
    """
    order = Fraction(order)
    top = eta_expansion(order + 1, W_THIRD, Fraction(1, 3))
    bottom = eta_expansion(order + 1, W_THIRD, Fraction(3))
    return ((top / bottom) ** 3).truncated(order)


def verify_fourier_mu(p):
    """Leading term of mu at the cusp swapped to infinity by Atkin-Lehner.

    Follows the chain mu(1+h) = u(h/2)^2/u(h)
                               = p^(-12/d) (u o w_p)(h) / (u o w_p)(h/2)^2
    with the leading form u = q^((p-1)/d)(1 + ...) substituted on the right,
    in the local parameter q1 = exp(i*pi/(p*(1-z))): the bookkeeping
    exp(-2*pi*i/(p*h)) = q1^2 and exp(-4*pi*i/(p*h)) = q1^4 turns the two
    factors into q1 powers.  Returns (leading coefficient, q1-exponent).
    """
    _check_p(p)
    d = unit_group_exponent(p)
    lead = Fraction(p - 1, d)
    # (u o w_p)(h): q = exp(2*pi*i*(-1/(p h))) = q1^2, so exponent 2*lead
    numerator_exponent = 2 * lead
    # (u o w_p)(h/2)^2: q = exp(2*pi*i*(-2/(p h))) = q1^4, squared
    denominator_exponent = 2 * (4 * lead)
    exponent = numerator_exponent - denominator_exponent
    if exponent.denominator != 1:
        raise ArithmeticError("q1 exponent must be integral")
    coefficient = Fraction(1, p ** (12 // d))
    return coefficient, int(exponent)
