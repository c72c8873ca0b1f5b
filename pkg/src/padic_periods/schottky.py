"""Moebius maps over Q with p-adic hyperbolicity tests, ultrametric disks in
the projective line, Schottky groups in good position, and the Bruhat-Tits
tree metric.

Disks are parametrized by a rational center c, a rational radius valuation
rval (radius p^-rval), a closed/open flag, and a complement flag; the
complement of a disk is the exact set complement in P^1, which is the disk
"around infinity" on the other side of the same sphere.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import rational_valuation


class GeometryError(ValueError):
    """A geometric precondition failed (degenerate map, missing ball system)."""


class BoundaryPoleError(GeometryError):
    """The pole of the Moebius map lies on the boundary sphere of the disk."""


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"


INFINITY = _Infinity()


def val(q, p):
    """v_p on Q with v(0) = None (treated as +infinity by callers)."""
    q = Fraction(q)
    if q == 0:
        return None
    return rational_valuation(q, p)


class MobiusMap:
    """A 2x2 invertible matrix over Q acting on P^1, taken up to scalars."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (Fraction(x) for x in (a, b, c, d))
        if self.det() == 0:
            raise GeometryError("Moebius map needs a nonzero determinant")

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __call__(self, z):
        if z is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        z = Fraction(z)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    def compose(self, other):
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = compose

    def inverse(self):
        # adjugate; same map in PGL_2
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def pole(self):
        """Preimage of infinity."""
        if self.c == 0:
            return INFINITY
        return -self.d / self.c

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        # equality in PGL_2: proportional matrices
        s, o = self.rows(), other.rows()
        flat_s = [x for row in s for x in row]
        flat_o = [x for row in o for x in row]
        for ks, ko in zip(flat_s, flat_o):
            if (ks == 0) != (ko == 0):
                return False
        ratios = {ks / ko for ks, ko in zip(flat_s, flat_o) if ko != 0}
        return len(ratios) == 1

    def __hash__(self):
        raise TypeError("MobiusMap is mutable-equality only")

    def __repr__(self):
        return "MobiusMap(%s, %s, %s, %s)" % (self.a, self.b, self.c, self.d)


def is_hyperbolic(m, p):
    """Distinct eigenvalue valuations, i.e. v(tr^2 / det) < 0."""
    tr = m.trace()
    if tr == 0:
        return False
    return rational_valuation(m.det(), p) - 2 * rational_valuation(tr, p) > 0


def translation_length(m, p):
    """Difference of the eigenvalue valuations (Newton polygon slopes)."""
    if not is_hyperbolic(m, p):
        raise GeometryError("translation length needs a hyperbolic map")
    return rational_valuation(m.det(), p) - 2 * rational_valuation(m.trace(), p)


@dataclass(frozen=True)
class Disk:
    """Disk in P^1: the ball {v(z - center) >= rval} (closed) or > (open),
    or its exact complement (complement=True, containing infinity)."""

    center: Fraction
    rval: Fraction
    closed: bool = True
    complement: bool = False

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "rval", Fraction(self.rval))

    def complemented(self):
        return Disk(self.center, self.rval, self.closed, not self.complement)

    def _ball_contains(self, z, p):
        if z is INFINITY:
            return False
        w = val(Fraction(z) - self.center, p)
        if w is None:  # z == center
            return True
        return w >= self.rval if self.closed else w > self.rval

    def contains(self, z, p):
        inside = self._ball_contains(z, p)
        return not inside if self.complement else inside

    def same_set(self, other, p):
        """Equality as subsets of P^1."""
        if self.complement != other.complement or self.closed != other.closed:
            return False
        if self.rval != other.rval:
            return False
        w = val(self.center - other.center, p)
        if w is None:
            return True
        return w >= self.rval if self.closed else w > self.rval

    def ball_part(self):
        return Disk(self.center, self.rval, self.closed, False)


def _ball_subset(b1, b2, p):
    """b1 inside b2, both plain balls."""
    if not b2._ball_contains(b1.center, p):
        return False
    if b1.rval > b2.rval:
        return True
    if b1.rval == b2.rval:
        return not (b1.closed and not b2.closed)
    return False


def disks_disjoint(d1, d2, p):
    """Exact disjointness of two disks in P^1."""
    if d1.complement and d2.complement:
        return False  # both contain infinity
    if not d1.complement and not d2.complement:
        # balls intersect iff one contains the other's center
        return not (
            d1._ball_contains(d2.center, p) or d2._ball_contains(d1.center, p)
        )
    ball, comp = (d1, d2) if d2.complement else (d2, d1)
    return _ball_subset(ball, comp.ball_part(), p)


def mobius_image_of_ball(m, disk, p):
    """Exact image of a disk under a Moebius map.

    Raises BoundaryPoleError when the pole of the map lies on the boundary
    sphere of the underlying ball, in which case the image of a closed ball
    is not a disk.
    """
    if disk.complement:
        return mobius_image_of_ball(m, disk.ball_part(), p).complemented()
    c, r, closed = disk.center, disk.rval, disk.closed
    if m.c == 0:
        scale = rational_valuation(m.a / m.d, p)
        return Disk(m(c), r + scale, closed)
    pole = m.pole()
    w = val(c - pole, p)
    vk = rational_valuation(m.det(), p) - 2 * rational_valuation(m.c, p)
    far_center = m.a / m.c  # image of infinity
    if w is not None and w == r:
        raise BoundaryPoleError(
            "pole %s lies on the boundary sphere of %r" % (pole, disk)
        )
    if w is None or w > r:
        # pole inside: the image is the far side of a sphere around m(inf)
        return Disk(far_center, vk - r, not closed, complement=True)
    # pole strictly outside: distances to the pole are constant on the ball
    return Disk(m(c), r - 2 * w + vk, closed)


@dataclass(frozen=True)
class SchottkyGroup:
    """Free group of hyperbolic Moebius maps with an optional system of
    disks (B_i, C_i): alpha_i maps the complement of B_i onto C_i."""

    generators: tuple
    ball_system: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.ball_system is not None:
            object.__setattr__(self, "ball_system", tuple(self.ball_system))
            if len(self.ball_system) != len(self.generators):
                raise GeometryError("need one (B, C) pair per generator")

    @property
    def rank(self):
        return len(self.generators)

    def letter(self, s):
        """Generator matrix for a signed 1-based index."""
        g = self.generators[abs(s) - 1]
        return g if s > 0 else g.inverse()

    def word_map(self, word):
        m = MobiusMap(1, 0, 0, 1)
        for s in word:
            m = m @ self.letter(s)
        return m


def reduced_words_of_length(group, length):
    """All reduced words of exactly this length, with their maps.

    Words are tuples of signed 1-based generator indices; the map is the
    left-to-right composition.  Count: 2g (2g-1)^(length-1).
    """
    if length == 0:
        return [((), MobiusMap(1, 0, 0, 1))]
    letters = [s for i in range(1, group.rank + 1) for s in (i, -i)]
    level = [((s,), group.letter(s)) for s in letters]
    for _ in range(length - 1):
        nxt = []
        for word, mat in level:
            last = word[-1]
            for s in letters:
                if s == -last:
                    continue
                nxt.append((word + (s,), mat @ group.letter(s)))
        level = nxt
    return level


def reduced_words_up_to(group, max_length):
    """Words grouped by length: list indexed by length 0..max_length."""
    shells = [[((), MobiusMap(1, 0, 0, 1))]]
    letters = [s for i in range(1, group.rank + 1) for s in (i, -i)]
    for ell in range(1, max_length + 1):
        prev = shells[-1]
        nxt = []
        for word, mat in prev:
            for s in letters:
                if word and s == -word[-1]:
                    continue
                nxt.append((word + (s,), mat @ group.letter(s)))
        shells.append(nxt)
    return shells


@dataclass
class GoodPositionReport:
    pairwise_disjoint: bool
    forward_images: list
    backward_images: list
    hyperbolic: list
    messages: list

    @property
    def ok(self):
        return (
            self.pairwise_disjoint
            and all(self.forward_images)
            and all(self.backward_images)
            and all(self.hyperbolic)
        )


def verify_good_position(group, p):
    """Check the ball system: disjointness and that each alpha_i maps the
    complement of B_i onto C_i (and inversely)."""
    if group.ball_system is None:
        raise GeometryError("group carries no ball system")
    disks = []
    for pair in group.ball_system:
        disks.extend(pair)
    messages = []
    disjoint = True
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if not disks_disjoint(disks[i], disks[j], p):
                disjoint = False
                messages.append("disks %d and %d meet" % (i, j))
    forward, backward, hyperbolic = [], [], []
    for gen, (b, c) in zip(group.generators, group.ball_system):
        hyperbolic.append(is_hyperbolic(gen, p))
        if not hyperbolic[-1]:
            messages.append("generator %r is not hyperbolic" % gen)
        try:
            img = mobius_image_of_ball(gen, b.complemented(), p)
            forward.append(img.same_set(c, p))
            if not forward[-1]:
                messages.append("alpha(P1 - B) = %r != C = %r" % (img, c))
        except BoundaryPoleError as exc:
            forward.append(False)
            messages.append(str(exc))
        try:
            img = mobius_image_of_ball(gen.inverse(), c.complemented(), p)
            backward.append(img.same_set(b, p))
            if not backward[-1]:
                messages.append("alpha^-1(P1 - C) = %r != B = %r" % (img, b))
        except BoundaryPoleError as exc:
            backward.append(False)
            messages.append(str(exc))
    return GoodPositionReport(disjoint, forward, backward, hyperbolic, messages)


def fundamental_domain_sample(group, p):
    """Deterministic rational point outside every disk of the ball system."""
    if group.ball_system is None:
        raise GeometryError("group carries no ball system")
    disks = [d for pair in group.ball_system for d in pair]
    candidates = [Fraction(k) for k in range(1, 4 * p)] + [
        Fraction(1, p),
        Fraction(2, p),
        Fraction(1, p * p),
    ]
    for z in candidates:
        if not any(d.contains(z, p) for d in disks):
            return z
    raise GeometryError("no sample point found outside the ball system")


# -- Bruhat-Tits tree ----------------------------------------------------


@dataclass(frozen=True)
class TreeVertex:
    """Homothety class of rank-2 lattices, in canonical upper-triangular
    form [[p^a, b], [0, p^d]] with min(a, d, v_p(b)) = 0 and 0 <= b < p^a."""

    p: int
    a: int
    d: int
    b: int

    @classmethod
    def standard(cls, p):
        return cls(p, 0, 0, 0)

    @classmethod
    def from_matrix(cls, rows, p):
        (m11, m12), (m21, m22) = (
            (Fraction(rows[0][0]), Fraction(rows[0][1])),
            (Fraction(rows[1][0]), Fraction(rows[1][1])),
        )
        if m11 * m22 - m12 * m21 == 0:
            raise GeometryError("lattice basis must be invertible")
        # column reduction over Z_(p): kill the bottom-left entry
        c1 = (m11, m21)
        c2 = (m12, m22)
        v21 = val(c1[1], p)
        v22 = val(c2[1], p)
        if v22 is None or (v21 is not None and v21 < v22):
            c1, c2 = c2, c1
        if c1[1] != 0:
            # t is a p-adic unit times p^(v21 - v22), integral by the swap
            t = c1[1] / c2[1]
            c1 = (c1[0] - t * c2[0], Fraction(0))
        # now c1 = (x, 0), c2 = (y, w) with w != 0
        x, y, w = c1[0], c2[0], c2[1]
        if x == 0:
            raise GeometryError("lattice basis must be invertible")
        a = rational_valuation(x, p)
        d = rational_valuation(w, p)
        # scale column 2 by the unit p^d / w so its pivot is exactly p^d
        y = y * Fraction(p) ** d / w
        vy = val(y, p)
        shift = min(a, d) if vy is None else min(a, d, vy)
        a, d = a - shift, d - shift
        if vy is not None:
            y = y / Fraction(p) ** shift
        # reduce y mod p^a (column ops by c1 change y by multiples of p^a)
        if vy is None or vy - shift >= a:
            b = 0
        else:
            num, den = y.numerator, y.denominator
            mod = p**a
            b = num * pow(den, -1, mod) % mod
        return cls(p, a, d, b)

    def basis(self):
        return ((Fraction(self.p**self.a), Fraction(self.b)), (Fraction(0), Fraction(self.p**self.d)))


def tree_distance(u, v):
    """Path distance: difference of the elementary divisor valuations of the
    change-of-basis matrix."""
    if u.p != v.p:
        raise GeometryError("vertices on different trees")
    p = u.p
    (a1, b1), (_, d1) = u.basis()
    (a2, b2), (_, d2) = v.basis()
    # n = u_basis^{-1} v_basis, exact over Q
    det1 = a1 * d1
    n11 = (d1 * a2) / det1
    n12 = (d1 * b2 - b1 * d2) / det1
    n21 = Fraction(0)
    n22 = (a1 * d2) / det1
    entries = [n11, n12, n21, n22]
    vals = [val(x, p) for x in entries if x != 0]
    emin = min(vals)
    vdet = rational_valuation(n11 * n22 - n12 * n21, p)
    return (vdet - emin) - emin
