"""Supersingular lambda-invariants in characteristic p.

The lambda-invariants of supersingular Legendre curves are exactly the roots
of H_p(y) = sum_i binom(m, i)^2 y^i with m = (p-1)/2; all of them lie in
F_{p^2} \\ {0, 1} and there are (p-1)/2 of them.  Roots are found by
splitting off the F_p part with a vectorized scan and factoring the rest
with seeded equal-degree splitting into quadratics.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .arith import Fp2Element, fp2_make, least_nonresidue, sqrt_mod_p


@dataclass(frozen=True)
class SupersingularSet:
    """Roots of H_p over F_{p^2}, sorted by (a, b), with the Frobenius
    permutation attached (frobenius_perm[i] is the index of lambda_i^p)."""

    p: int
    lambdas: tuple
    frobenius_perm: tuple
    order_key: str = "lex(a,b)"

    @property
    def genus_plus_one(self):
        return len(self.lambdas)


def deuring_polynomial(p):
    """Coefficients (ascending) of H_p(y) = sum binom(m,i)^2 y^i mod p."""
    least_nonresidue(p)
    m = (p - 1) // 2
    return [comb(m, i) ** 2 % p for i in range(m + 1)]


def _quadratic_roots(B, C, p, n):
    # roots of y^2 + B y + C, irreducible over F_p, as a +- b x
    a = -B * pow(2, p - 2, p) % p
    disc = (a * a - C) % p
    b2 = disc * pow(n, p - 2, p) % p
    b = sqrt_mod_p(b2, p)
    return (a, b), (a, (p - b) % p)


def _split_quadratics(ops, h, rng, p):
    """Split a squarefree product of irreducible quadratics over F_p."""
    stack = [h]
    out = []
    e = (p * p - 1) // 2
    while stack:
        g = stack.pop()
        dg = g.size - 1
        if dg == 0:
            continue
        if dg == 2:
            out.append(g)
            continue
        while True:
            r = np.array([rng.randrange(p) for _ in range(dg - 1)] + [1], dtype=np.int64)
            w = ops.powmod(r, e, g)
            w = w.copy()
            w[0] = (w[0] - 1) % p
            f1 = ops.gcd(g, kernels.trim(w))
            d1 = f1.size - 1
            if 0 < d1 < dg:
                f2, rem = ops.divmod(g, f1)
                assert kernels.is_zero(rem)
                stack.append(f1)
                stack.append(f2)
                break
    return out


@lru_cache(maxsize=None)
def supersingular_lambdas(p):
    """All supersingular lambda-invariants over F_{p^2}, with Frobenius data."""
    n = least_nonresidue(p)
    coeffs = deuring_polynomial(p)
    ops = kernels.ops_for(p)
    h = np.array(coeffs, dtype=np.int64)

    # F_p roots via a vectorized scan, then peel them off by synthetic division.
    vals = ops.eval_fp(h)
    fp_roots = [int(r) for r in np.nonzero(vals == 0)[0]]
    rest = h
    for r in fp_roots:
        rest = _synthetic_divide(rest, r, p)

    pairs = [(r, 0) for r in fp_roots]
    rng = random.Random(p)
    for q in _split_quadratics(ops, kernels.trim(rest), rng, p):
        inv_lead = pow(int(q[2]), p - 2, p)
        B = int(q[1]) * inv_lead % p
        C = int(q[0]) * inv_lead % p
        pairs.extend(_quadratic_roots(B, C, p, n))

    if len(pairs) != (p - 1) // 2:
        raise AssertionError("found %d lambda-invariants, expected %d" % (len(pairs), (p - 1) // 2))
    if any(pair in ((0, 0), (1, 0)) for pair in pairs):
        raise AssertionError("0 or 1 appeared as a lambda-invariant")
    for a, b in pairs:
        if _eval_fp2(coeffs, a, b, p, n) != (0, 0):
            raise AssertionError("claimed root (%d, %d) does not vanish" % (a, b))

    pairs.sort()
    index = {pair: i for i, pair in enumerate(pairs)}
    perm = tuple(index[(a, (p - b) % p)] for a, b in pairs)
    lambdas = tuple(Fp2Element(p, a, b, n) for a, b in pairs)
    return SupersingularSet(p=p, lambdas=lambdas, frobenius_perm=perm)


def _synthetic_divide(coeffs, r, p):
    # divide by (y - r); remainder must vanish
    out = np.zeros(coeffs.size - 1, dtype=np.int64)
    acc = 0
    for i in range(coeffs.size - 1, 0, -1):
        acc = (acc * r + coeffs[i]) % p
        out[i - 1] = acc
    assert (acc * r + coeffs[0]) % p == 0
    return out


def _eval_fp2(coeffs, a, b, p, n):
    va, vb = 0, 0
    for c in reversed(coeffs):
        va, vb = (va * a + n * vb * b + c) % p, (va * b + vb * a) % p
    return va, vb


def lambda_to_j(lam):
    """j-invariant 2^8 (l^2 - l + 1)^3 / (l^2 (1 - l)^2); l must avoid 0, 1."""
    p = lam.p
    one = Fp2Element(p, 1, 0, lam.n)
    if lam.is_zero() or lam == one:
        raise ValueError("lambda = 0, 1 does not define a Legendre curve")
    num = (lam * lam - lam + one) ** 3
    den = (lam * lam) * (one - lam) ** 2
    return 256 * num * den.inverse()


def scan_roots(p):
    """Exhaustive F_{p^2} root scan of H_p (test oracle; quadratic in p)."""
    n = least_nonresidue(p)
    ops = kernels.ops_for(p)
    mask = ops.fp2_root_mask(np.array(deuring_polynomial(p), dtype=np.int64), n)
    return sorted((int(a), int(b)) for a, b in zip(*np.nonzero(mask)))
