"""Cusps of the level curves: widths, classes, and ramification indices.

Three groups appear, all containing -I and tested up to sign:

    level 1   lower left entry divisible by p
    level 2   level 1 and congruent to the identity mod 2
    level 3   level 1 and congruent to plus or minus the identity mod 3

A cusp a/c (gcd 1, infinity = 1/0) is moved to infinity by the inverse of
any determinant-one completion tau of the column (a, c); its width is the
least h with tau T^h tau^-1 in the group, and its local parameter is
exp(2 pi i sigma(z)/width) with sigma = tau^-1.  Ramification indices of
the coverings down to the level one curve come out of the affine composite
sigma_target gamma covering sigma_source^-1, and their fiber sums are
checked against covering degrees counted independently in the finite
quotient SL2(Z / level^2).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..schottky import GeometryError, INFINITY, MobiusMap
from .modforms import mu_expansion, u_expansion, unit_group_exponent, verify_fourier_mu

__all__ = [
    "CuspData",
    "cusp_data",
    "cusp_width",
    "cusps_equivalent",
    "cusp_classes",
    "gamma0_class",
    "gamma0_shift",
    "scaling_map",
    "ramification_index",
    "map_degree",
    "UniformizerRelation",
    "uniformizer_relations",
    "PullbackReport",
    "correspondence_pullback",
    "TableFinding",
    "RamificationTable",
    "ramification_table",
    "MuDivisorReport",
    "mu_divisor",
    "LEVEL2_COVERINGS",
    "LEVEL3_COVERINGS",
]

LEVEL2_COVERINGS = (
    ("z", MobiusMap(1, 0, 0, 1)),
    ("(z+1)/2", MobiusMap(1, 1, 0, 2)),
)

LEVEL3_COVERINGS = (
    ("z", MobiusMap(1, 0, 0, 1)),
    ("z/3", MobiusMap(1, 0, 0, 3)),
    ("(z+1)/3", MobiusMap(1, 1, 0, 3)),
    ("(z+2)/3", MobiusMap(1, 2, 0, 3)),
    ("3z", MobiusMap(3, 0, 0, 1)),
)

# Reference ramification indices for the level three coverings, rows the
# cusps 0, 1/3, 1, 1/2 and columns in LEVEL3_COVERINGS order, as printed
# in the published table.  Two entries of the first row disagree with the
# direct computation; ramification_table reports both and flags the
# mismatches as findings rather than forcing agreement.
REFERENCE_TABLE = {
    Fraction(0): (3, 1, 1, 1, 9),
    Fraction(1, 3): (3, 1, 1, 1, 9),
    Fraction(1): (3, 1, 1, 9, 1),
    Fraction(1, 2): (3, 1, 9, 1, 1),
}


def _check_level_p(level, p):
    if level not in (1, 2, 3):
        raise ValueError("level must be 1, 2, or 3")
    if not isinstance(p, int) or p < 5:
        raise ValueError("need an integer p >= 5")


def _as_pair(cusp):
    """Normalize to a coprime pair (a, c) with c >= 0; infinity is (1, 0)."""
    if cusp is INFINITY:
        return (1, 0)
    cusp = Fraction(cusp)
    return (cusp.numerator, cusp.denominator)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _completion(a, c):
    """A determinant-one integer matrix with first column (a, c)."""
    g, x, y = _xgcd(a, c)
    if g != 1:
        raise ValueError("cusp pair must be coprime")
    # a*x + c*y = 1, so det [[a, -y], [c, x]] = 1
    return ((a, -y), (c, x))


def _mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _adjugate(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def _in_group(level, p, m):
    """Membership up to sign, for integer matrices of determinant one."""
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        return False
    if c % p:
        return False
    if level == 1:
        return True
    if level == 2:
        return a % 2 == 1 and d % 2 == 1 and b % 2 == 0 and c % 2 == 0
    if b % 3 or c % 3:
        return False
    return (a % 3, d % 3) in ((1, 1), (2, 2))


def cusp_width(level, p, cusp):
    """Least h >= 1 whose conjugated translation lies in the level group."""
    _check_level_p(level, p)
    a, c = _as_pair(cusp)
    for h in range(1, 12 * level * p + 1):
        m = ((1 - h * a * c, h * a * a), (-h * c * c, 1 + h * a * c))
        if _in_group(level, p, m):
            return h
    raise RuntimeError("translation width not found below the search cap")


def scaling_map(cusp):
    """Determinant-one Moebius map sending the cusp to infinity."""
    a, c = _as_pair(cusp)
    return MobiusMap.from_rows(_adjugate(_completion(a, c)))


@dataclass(frozen=True)
class CuspData:
    level: int
    prime: int
    representative: object
    width: int
    scaling: MobiusMap
    parameter: str


def cusp_data(level, p, cusp):
    """Width, scaling map, and local parameter descriptor of one cusp."""
    width = cusp_width(level, p, cusp)
    sigma = scaling_map(cusp)
    return CuspData(
        level=level,
        prime=p,
        representative=cusp,
        width=width,
        scaling=sigma,
        parameter="exp(2*pi*i*sigma(z)/%d)" % width,
    )


def cusps_equivalent(level, p, x, y):
    """Whether some group element carries x to y.

    gamma moves x to y exactly when tau_y T^k tau_x^-1 lands in the group
    for some k; membership only depends on k modulo level*p, so the search
    is finite.
    """
    _check_level_p(level, p)
    tx = _completion(*_as_pair(x))
    ty = _completion(*_as_pair(y))
    tx_inv = _adjugate(tx)
    for k in range(level * p):
        if _in_group(level, p, _mul(_mul(ty, ((1, k), (0, 1))), tx_inv)):
            return True
    return False


def _projective_orbit_size(p):
    """Size of the orbit of (1:0) on the projective line mod p under the
    two standard generators; transitivity makes this the index of the
    level one group in the full modular group."""
    seen = {(1, 0)}
    stack = [(1, 0)]
    while stack:
        u, v = stack.pop()
        for (a, b), (c, d) in (((0, -1), (1, 0)), ((1, 1), (0, 1))):
            nu, nv = (a * u + b * v) % p, (c * u + d * v) % p
            if nv:
                point = (nu * pow(nv, -1, p) % p, 1)
            else:
                point = (1, 0)
            if point not in seen:
                seen.add(point)
                stack.append(point)
    return len(seen)


def cusp_classes(level, p):
    """Inequivalent cusp representatives, certified complete by width count.

    The widths over a full set of classes add up to the index of the
    projective group, which factors as (orbit size on the projective line
    mod p) times (covering degree of the identity map, counted in the
    finite quotient).  Candidates are swept in a fixed order until the
    widths reach the index exactly.
    """
    _check_level_p(level, p)
    index = _projective_orbit_size(p) * map_degree(level, p, MobiusMap(1, 0, 0, 1))
    candidates = [
        INFINITY,
        Fraction(0),
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, p),
        Fraction(2, p),
        Fraction(3, p),
    ]
    for c in range(1, level * p + 1):
        for a in range(c):
            if gcd(a, c) == 1:
                candidates.append(Fraction(a, c))
    reps = []
    total = 0
    for x in candidates:
        if any(cusps_equivalent(level, p, x, r) for r in reps):
            continue
        reps.append(x)
        total += cusp_width(level, p, x)
        if total == index:
            return tuple(reps)
        if total > index:
            raise RuntimeError("width count overshot the group index")
    raise RuntimeError("candidate sweep ended before covering the group index")


def gamma0_class(p, cusp):
    """Level one class representative of a cusp: 0 or infinity."""
    a, c = _as_pair(cusp)
    return INFINITY if c % p == 0 else Fraction(0)


def gamma0_shift(p, cusp, target):
    """A level one group element moving the cusp to the representative."""
    a, c = _as_pair(cusp)
    if target is INFINITY:
        if c % p:
            raise GeometryError("cusp %s is not in the class of infinity" % (cusp,))
        g, x, y = _xgcd(a, c)
        # x*a + y*c = 1; bottom row (-c, a) is divisible by p where needed
        return MobiusMap(x, y, -c, a)
    if Fraction(target) != 0:
        raise ValueError("target must be 0 or INFINITY")
    if c % p == 0:
        raise GeometryError("cusp %s is not in the class of zero" % (cusp,))
    t = (-pow(a * p % c, -1, c)) % c if c > 1 else 0
    d = (-1 - a * p * t) // c
    return MobiusMap(-c, a, p * t, d)


def ramification_index(level, p, covering, source, target):
    """Exponent of the local parameter map q_target o covering in q_source.

    The covering must send the source cusp into the level one class of the
    target representative (0 or infinity).  After a level one shift gamma,
    the composite sigma_target gamma covering sigma_source^-1 is affine
    w -> alpha w + beta, and the index is alpha * width_source /
    width_target, a positive integer.
    """
    _check_level_p(level, p)
    if target is not INFINITY and Fraction(target) != 0:
        raise ValueError("target must be 0 or INFINITY")
    image = covering(source)
    if gamma0_class(p, image) != gamma0_class(p, target):
        raise GeometryError(
            "covering sends %s to %s, outside the class of %s" % (source, image, target)
        )
    gamma = gamma0_shift(p, image, target)
    composite = (
        scaling_map(target)
        .compose(gamma)
        .compose(covering)
        .compose(scaling_map(source).inverse())
    )
    if composite.c != 0:
        raise GeometryError("local parameter composite is not affine")
    alpha = composite.a / composite.d
    index = alpha * cusp_width(level, p, source) / cusp_width(1, p, target)
    if index.denominator != 1 or index <= 0:
        raise GeometryError("ramification index %s is not a positive integer" % index)
    return int(index)


def map_degree(level, p, covering):
    """Degree of the covering onto the level one curve, counted in the
    finite quotient SL2(Z / level^2).

    The covering matrix must be upper triangular with positive diagonal
    whose product divides the level; conjugation then turns membership of
    the conjugate into congruence conditions mod level^2, while the lower
    left divisibility by p stays automatic.  The degree is the index of
    the subgroup those conditions cut out.
    """
    _check_level_p(level, p)
    rows = covering.rows()
    denominator = 1
    for row in rows:
        for x in row:
            denominator = denominator * x.denominator // gcd(denominator, x.denominator)
    (alpha, beta), (low, delta) = (
        (int(x * denominator) for x in row) for row in rows
    )
    if low != 0 or alpha <= 0 or delta <= 0:
        raise ValueError("covering must be upper triangular with positive diagonal")
    content = gcd(gcd(alpha, beta), delta)
    alpha, beta, delta = alpha // content, beta // content, delta // content
    ad = alpha * delta
    if level % ad:
        raise ValueError("diagonal product %d does not divide the level" % ad)
    if gcd(p, ad) != 1:
        raise ValueError("covering diagonal must stay coprime to p")
    modulus = level * level
    total = 0
    kept = 0
    for a in range(modulus):
        for b in range(modulus):
            for c in range(modulus):
                for d in range(modulus):
                    if (a * d - b * c - 1) % modulus:
                        continue
                    total += 1
                    y = (
                        alpha * (delta * a - beta * c),
                        beta * delta * a - beta * beta * c + delta * delta * b - beta * delta * d,
                        alpha * alpha * c,
                        alpha * (beta * c + delta * d),
                    )
                    if any(v % ad for v in y):
                        continue
                    y11, y12, y21, y22 = (v // ad for v in y)
                    if level == 2:
                        if y11 % 2 == 1 and y22 % 2 == 1 and y12 % 2 == 0 and y21 % 2 == 0:
                            kept += 1
                    elif level == 3:
                        if y12 % 3 == 0 and y21 % 3 == 0 and (y11 % 3, y22 % 3) in ((1, 1), (2, 2)):
                            kept += 1
                    else:
                        kept += 1
    if total % kept:
        raise RuntimeError("finite quotient count is not a subgroup index")
    return total // kept


@dataclass(frozen=True)
class UniformizerRelation:
    source: object
    target: object
    index_identity: int
    index_halving: int
    expected: tuple

    @property
    def ok(self):
        return (self.index_identity, self.index_halving) == self.expected


def uniformizer_relations(p):
    """The twelve local parameter exponents of the two degree six maps.

    For each cusp of the level two curve, both coverings land in the same
    level one class, and the identity map always has exponent two; the
    halving map has exponent four at the two cusps above 1 and 1/p and
    exponent one at the rest.
    """
    _check_level_p(2, p)
    identity = LEVEL2_COVERINGS[0][1]
    halving = LEVEL2_COVERINGS[1][1]
    expected = {
        (1, 1): (2, 4),
        (1, p): (2, 4),
        (1, 2): (2, 1),
        (2, p): (2, 1),
        (0, 1): (2, 1),
        (1, 0): (2, 1),
    }
    records = []
    for source in (Fraction(1), Fraction(1, p), Fraction(1, 2), Fraction(2, p), Fraction(0), INFINITY):
        target = gamma0_class(p, identity(source))
        if gamma0_class(p, halving(source)) != target:
            raise GeometryError("the two coverings separate the cusp %s" % (source,))
        records.append(
            UniformizerRelation(
                source=source,
                target=target,
                index_identity=ramification_index(2, p, identity, source, target),
                index_halving=ramification_index(2, p, halving, source, target),
                expected=expected[_as_pair(source)],
            )
        )
    return tuple(records)


def _class_lookup(level, p, reps, cusp):
    for rep in reps:
        if cusps_equivalent(level, p, cusp, rep):
            return rep
    raise GeometryError("cusp %s matches no representative" % (cusp,))


@dataclass(frozen=True, eq=False)
class PullbackReport:
    prime: int
    classes: tuple
    divisor: dict
    expected: dict
    matches: bool
    degrees: dict
    fiber_sums: dict
    fiber_sums_match: bool
    degree_zero: bool


def correspondence_pullback(p):
    """Pullback of (infinity) - (0) under twice the halving map minus the
    identity map, as a divisor on the cusps of the level two curve.

    The result must be six times ((1/p) - (1)); fiber sums of ramification
    indices are compared against the independently counted degrees, and
    the pullback of a degree zero divisor must have degree zero.
    """
    _check_level_p(2, p)
    reps = cusp_classes(2, p)
    divisor = {}
    fiber_sums = {}
    degrees = {}
    for label, covering in LEVEL2_COVERINGS:
        degrees[label] = map_degree(2, p, covering)
        fiber_sums[label] = {INFINITY: 0, Fraction(0): 0}
    for rep in reps:
        coefficient = 0
        for weight, (label, covering) in zip((-1, 2), LEVEL2_COVERINGS):
            target = gamma0_class(p, covering(rep))
            index = ramification_index(2, p, covering, rep, target)
            fiber_sums[label][target] += index
            coefficient += weight * index * (1 if target is INFINITY else -1)
        divisor[rep] = coefficient
    expected = {rep: 0 for rep in reps}
    expected[_class_lookup(2, p, reps, Fraction(1, p))] = 6
    expected[_class_lookup(2, p, reps, Fraction(1))] = -6
    fiber_sums_match = all(
        fiber_sums[label][cls] == degrees[label]
        for label in fiber_sums
        for cls in fiber_sums[label]
    )
    return PullbackReport(
        prime=p,
        classes=reps,
        divisor=divisor,
        expected=expected,
        matches=divisor == expected,
        degrees=degrees,
        fiber_sums=fiber_sums,
        fiber_sums_match=fiber_sums_match,
        degree_zero=sum(divisor.values()) == 0,
    )


@dataclass(frozen=True)
class TableFinding:
    cusp: object
    covering: str
    computed: int
    stated: int


@dataclass(frozen=True, eq=False)
class RamificationTable:
    prime: int
    coverings: tuple
    rows: dict
    reference: dict
    findings: tuple
    degrees: dict
    fiber_sums: dict
    fiber_sums_match: bool


def ramification_table(p):
    """Ramification indices of the five level three coverings at the four
    cusps away from p, compared against the published reference values.

    Mismatches are findings, not failures: the computed table is the one
    whose fiber sums agree with the covering degrees.  Fiber sums run over
    all cusp classes, split by the level one class downstairs.
    """
    _check_level_p(3, p)
    reps = cusp_classes(3, p)
    labels = tuple(label for label, _ in LEVEL3_COVERINGS)
    degrees = {}
    fiber_sums = {}
    for label, covering in LEVEL3_COVERINGS:
        degrees[label] = map_degree(3, p, covering)
        fiber_sums[label] = {INFINITY: 0, Fraction(0): 0}
        for rep in reps:
            target = gamma0_class(p, covering(rep))
            fiber_sums[label][target] += ramification_index(3, p, covering, rep, target)
    rows = {}
    findings = []
    for cusp, stated_row in REFERENCE_TABLE.items():
        computed_row = []
        for (label, covering), stated in zip(LEVEL3_COVERINGS, stated_row):
            target = gamma0_class(p, covering(cusp))
            computed = ramification_index(3, p, covering, cusp, target)
            computed_row.append(computed)
            if computed != stated:
                findings.append(
                    TableFinding(cusp=cusp, covering=label, computed=computed, stated=stated)
                )
        rows[cusp] = tuple(computed_row)
    fiber_sums_match = all(
        fiber_sums[label][cls] == degrees[label]
        for label in labels
        for cls in fiber_sums[label]
    )
    return RamificationTable(
        prime=p,
        coverings=labels,
        rows=rows,
        reference=dict(REFERENCE_TABLE),
        findings=tuple(findings),
        degrees=degrees,
        fiber_sums=fiber_sums,
        fiber_sums_match=fiber_sums_match,
    )


@dataclass(frozen=True, eq=False)
class MuDivisorReport:
    prime: int
    multiplier: int
    divisor: dict
    degree_zero: bool
    order_at_infinity: int
    series_valuation: object
    order_at_one: int
    fourier_exponent: int
    consistent: bool


def mu_divisor(p):
    """Divisor of the degree two unit on the level two curve.

    u vanishes to order (p-1)/d at infinity downstairs, so the divisor of
    mu is (p-1)/d times the correspondence pullback of (infinity) - (0).
    Two series facts pin it down independently: the expansion of mu at
    infinity starts at exponent zero, and its pole order at the cusp 1
    equals the exponent from the Fourier leading term.
    """
    _check_level_p(2, p)
    pull = correspondence_pullback(p)
    d = unit_group_exponent(p)
    k = (p - 1) // d
    if u_expansion(p, k + 2).valuation() != k:
        raise GeometryError("unexpected vanishing order of u at infinity")
    divisor = {rep: k * value for rep, value in pull.divisor.items()}
    reps = pull.classes
    rep_infinity = _class_lookup(2, p, reps, INFINITY)
    rep_one = _class_lookup(2, p, reps, Fraction(1))
    series_valuation = mu_expansion(p, 3).valuation()
    _, fourier_exponent = verify_fourier_mu(p)
    consistent = (
        pull.matches
        and divisor[rep_infinity] == 0 == series_valuation
        and divisor[rep_one] == fourier_exponent
        and sum(divisor.values()) == 0
    )
    return MuDivisorReport(
        prime=p,
        multiplier=6 * k,
        divisor=divisor,
        degree_zero=sum(divisor.values()) == 0,
        order_at_infinity=divisor[rep_infinity],
        series_valuation=series_valuation,
        order_at_one=divisor[rep_one],
        fourier_exponent=fourier_exponent,
        consistent=consistent,
    )
