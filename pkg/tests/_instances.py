"""Shared Schottky group instances for the geometry and pairing tests."""

from padic_periods.schottky import Disk, MobiusMap, SchottkyGroup, mobius_image_of_ball


def tate_group(p):
    """Rank one, generator z -> pz; marked disks on either side of the unit
    sphere."""
    alpha = MobiusMap(p, 0, 0, 1)
    b = Disk(0, -1, closed=True, complement=True)
    c = Disk(0, 0, closed=True)
    return SchottkyGroup((alpha,), ((b, c),))


def genus2_group(p):
    """Two conjugate length-2 generators with fixed point pairs (0, inf)
    and (1, 2)."""
    a1 = MobiusMap(p * p, 0, 0, 1)
    h = MobiusMap(2, -1, 1, -1)
    a2 = h @ a1 @ h.inverse()
    b1 = Disk(0, -1, closed=True, complement=True)
    c1 = Disk(0, 1, closed=True)
    b2 = Disk(2, 1, closed=False)
    c2 = Disk(1, 1, closed=True)
    return SchottkyGroup((a1, a2), ((b1, c1), (b2, c2)))


def bounded_genus2_group(p):
    """The genus-2 instance conjugated so every fixed point is finite and
    the marked disks avoid infinity; here the raw theta products converge."""
    sigma = MobiusMap(1, 1, 1, 2)
    base = genus2_group(p)
    gens = tuple(sigma @ g @ sigma.inverse() for g in base.generators)
    balls = tuple(
        (
            mobius_image_of_ball(sigma, b, p),
            mobius_image_of_ball(sigma, c, p),
        )
        for (b, c) in base.ball_system
    )
    return SchottkyGroup(gens, balls)
