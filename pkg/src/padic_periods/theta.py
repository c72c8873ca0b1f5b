"""Truncated theta products over Schottky groups and the period pairing.

Products are enumerated by reduced word length in inverse-closed shells and
evaluated in exact rational arithmetic; p-adic readings happen only at the
end.  The raw product theta(a,b;z) is truncation-scheme dependent whenever
infinity lies in the limit set (each far shell contributes a constant drift
factor), so only certified-stable truncations carry a precision estimate.
The period pairing divides two theta truncations sharing the same word set,
which cancels the drift factor for factor; its shells always stabilize on a
group in good position.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import PadicElement, rational_valuation
from .schottky import (
    INFINITY,
    GeometryError,
    reduced_words_up_to,
    translation_length,
    verify_good_position,
)

DEFAULT_RELATIVE_PRECISION = 16
MAX_RELATIVE_PRECISION = 48


class ThetaError(ArithmeticError):
    """Theta product could not be evaluated as requested."""


class OrbitCollisionError(ThetaError):
    """An evaluation point collided with an enumerated orbit point."""


class StabilizationError(ThetaError):
    """The truncation did not certify the requested stabilization."""


def _require_good_position(group, p):
    report = verify_good_position(group, p)
    if not report.ok:
        raise GeometryError(
            "ball system failed verification: %s" % "; ".join(report.messages)
        )


def _factor(z, w):
    """Linear factor z - w with the projective convention (z - inf) = 1."""
    if w is INFINITY:
        return Fraction(1)
    return z - w


def _shell_products(word_shells, a, b, z):
    """Per-shell products of (z - gamma a)/(z - gamma b)."""
    out = []
    for shell in word_shells:
        acc = Fraction(1)
        for word, m in shell:
            num = _factor(z, m(a))
            den = _factor(z, m(b))
            if num == 0:
                raise OrbitCollisionError("z hits the orbit of a at %s" % (word,))
            if den == 0:
                raise OrbitCollisionError("z hits the orbit of b at %s" % (word,))
            acc *= num / den
        out.append(acc)
    return out


def _profile(shell_values, p):
    """(length, valuation of shell product - 1); None marks an exact shell."""
    prof = []
    for ell, s in enumerate(shell_values):
        if ell == 0:
            continue
        delta = s - 1
        prof.append((ell, None if delta == 0 else rational_valuation(delta, p)))
    return prof


def _certified_estimate(profile):
    """Relative precision certified by the profile tail, or None.

    Requires two trailing relative changes with nondecreasing valuations
    at least 1; the estimate is the last valuation minus a margin of 1
    (math.inf when the tail is exactly stable).
    """
    if len(profile) < 2:
        return None
    tail = [math.inf if v is None else v for (_, v) in profile[-2:]]
    if tail[0] < 1 or tail[1] < tail[0]:
        return None
    return tail[1] - 1 if tail[1] is not math.inf else math.inf


def _as_padic(value, p, relative_precision):
    rel = int(min(relative_precision, MAX_RELATIVE_PRECISION))
    rel = max(rel, 1)
    v = rational_valuation(value, p)
    return PadicElement.from_rational(value, p, v + rel)


@dataclass
class ThetaTruncation:
    group: object
    a: Fraction
    b: Fraction
    z: Fraction
    max_length: int
    p: int
    exact: Fraction
    value: PadicElement
    profile: list

    @property
    def stabilization_estimate(self):
        return _certified_estimate(self.profile)


def theta_truncated(group, a, b, z, max_length, p, check_position=True):
    """Truncation of prod (z - gamma a)/(z - gamma b) over words up to
    max_length, with the per-shell stabilization profile."""
    if z is INFINITY:
        raise ThetaError("evaluate at a finite point (move infinity first)")
    if check_position:
        _require_good_position(group, p)
    z = Fraction(z)
    shells = _shell_products(reduced_words_up_to(group, max_length), a, b, z)
    exact = math.prod(shells)
    prof = _profile(shells, p)
    est = _certified_estimate(prof)
    value = _as_padic(exact, p, DEFAULT_RELATIVE_PRECISION if est is None else est)
    return ThetaTruncation(group, a, b, z, max_length, p, exact, value, prof)


@dataclass
class ThetaQuotient:
    """theta(a,b; z1)/theta(a,b; z2) with shared word shells; the constant
    drift of the raw product cancels shell by shell."""

    a: Fraction
    b: Fraction
    z1: Fraction
    z2: Fraction
    max_length: int
    p: int
    exact: Fraction
    profile: list

    @property
    def stabilization_estimate(self):
        return _certified_estimate(self.profile)


def theta_quotient(group, a, b, z1, z2, max_length, p, check_position=True):
    if check_position:
        _require_good_position(group, p)
    z1, z2 = Fraction(z1), Fraction(z2)
    word_shells = reduced_words_up_to(group, max_length)
    num = _shell_products(word_shells, a, b, z1)
    den = _shell_products(word_shells, a, b, z2)
    ratios = [n / d for n, d in zip(num, den)]
    return ThetaQuotient(
        a, b, z1, z2, max_length, p, math.prod(ratios), _profile(ratios, p)
    )


def canonical_points(group, p, count=2, exclude=()):
    """Deterministic rational points outside the ball system, pairwise
    distinct; orbit points of one never collide with another."""
    if group.ball_system is None:
        raise GeometryError("group carries no ball system")
    disks = [d for pair in group.ball_system for d in pair]
    chosen = []
    candidates = [Fraction(k) for k in range(1, 4 * p + 1)]
    candidates += [Fraction(j, p) for j in range(1, 4 * p * p) if j % p]
    candidates += [Fraction(j, p * p) for j in range(1, 4 * p * p) if j % p]
    for cand in candidates:
        if cand in chosen or cand in exclude:
            continue
        if any(d.contains(cand, p) for d in disks):
            continue
        chosen.append(cand)
        if len(chosen) == count:
            return chosen
    raise GeometryError("could not find %d sample points" % count)


def u_alpha(group, word, z, max_length, p, base=None, verify_base=True):
    """Truncation of theta(a, word(a); z) with a canonical base point a.

    When both truncations certify a stabilization estimate, the result is
    cross-checked against a second base point to that precision.
    """
    _require_good_position(group, p)
    z = Fraction(z)
    if base is None:
        pts = canonical_points(group, p, count=2, exclude=(z,))
    else:
        pts = [Fraction(base)] + canonical_points(group, p, 1, (z, Fraction(base)))
    a = pts[0]
    amap = group.word_map(word)
    if amap(a) is INFINITY:
        raise ThetaError("base point maps to infinity under the word")
    theta = theta_truncated(group, a, amap(a), z, max_length, p, check_position=False)
    if verify_base and len(word) > 0:
        a2 = pts[1]
        if amap(a2) is not INFINITY:
            other = theta_truncated(
                group, a2, amap(a2), z, max_length, p, check_position=False
            )
            e1, e2 = theta.stabilization_estimate, other.stabilization_estimate
            if e1 is not None and e2 is not None:
                bound = min(e1, e2)
                diff = theta.exact / other.exact - 1
                if diff != 0 and rational_valuation(diff, p) < bound:
                    raise ThetaError(
                        "base dependence at certified precision %s" % bound
                    )
    return theta


@dataclass
class PeriodPairingResult:
    group: object
    alpha: tuple
    beta: tuple
    exact: Fraction
    value: PadicElement
    precision_estimate: object
    profile: list
    base: Fraction
    eval_point: Fraction

    @property
    def witnesses(self):
        return (self.base, self.eval_point)

    @property
    def valuation(self):
        return rational_valuation(self.exact, self.group_prime())

    def group_prime(self):
        return self.value.p


def drinfeld_pairing(group, alpha, beta, max_length, p, base=None, eval_point=None):
    """Period pairing of two words: theta(a, alpha a; z) / theta(a, alpha a;
    beta z), shell by shell over a shared word set."""
    _require_good_position(group, p)
    if base is None or eval_point is None:
        pts = canonical_points(
            group, p, count=2, exclude=tuple(x for x in (base, eval_point) if x is not None)
        )
        a = Fraction(base) if base is not None else pts[0]
        z = Fraction(eval_point) if eval_point is not None else pts[1]
    else:
        a, z = Fraction(base), Fraction(eval_point)
    if a == z:
        raise ThetaError("base and evaluation points must differ")
    amap = group.word_map(alpha)
    aa = amap(a)
    if aa is INFINITY:
        raise ThetaError("alpha sends the base point to infinity")
    bz = group.word_map(beta)(z)
    if bz is INFINITY:
        raise ThetaError("beta sends the evaluation point to infinity")
    quot = theta_quotient(group, a, aa, z, bz, max_length, p, check_position=False)
    est = quot.stabilization_estimate
    if est is None:
        raise StabilizationError(
            "pairing did not stabilize at length %d: %s" % (max_length, quot.profile)
        )
    value = _as_padic(quot.exact, p, est)
    return PeriodPairingResult(
        group, tuple(alpha), tuple(beta), quot.exact, value, est, quot.profile, a, z
    )


def valuation_gram(group, max_length, p):
    """Matrix of pairing valuations on the generators."""
    n = group.rank
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            res = drinfeld_pairing(group, (i + 1,), (j + 1,), max_length, p)
            gram[i][j] = rational_valuation(res.exact, p)
    return gram


def translation_lengths(group, p):
    return [translation_length(g, p) for g in group.generators]
