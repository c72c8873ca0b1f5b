"""The residual period pairing on divisors supported on the supersingular
lambda-invariants.

For the basis divisors e_0, ..., e_g attached to the sorted lambda-invariants,
the pairing matrix has entries

    (0, Norm(lambda_i - lambda_j))            for i != j,
    (1, prod_{k != i} Norm(lambda_i - lambda_k)^{-1})   for i = j,

as classes in Z x F_{p^2}^*.  Norm(z) = z^(p+1) = a^2 - n b^2 lands in F_p,
so residues are stored as an integer matrix; entry() wraps them as
ResidualClass on demand.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from .arith import Fp2Element, ResidualClass
from .supersingular import supersingular_lambdas


@dataclass(frozen=True)
class DivisorOnS:
    """Divisor on the set of lambda-invariants: one integer per basis index."""

    coefficients: tuple

    @property
    def degree(self):
        return sum(self.coefficients)

    def __len__(self):
        return len(self.coefficients)


def basis_divisor(i, size):
    """The divisor e_i."""
    return DivisorOnS(tuple(1 if k == i else 0 for k in range(size)))


def eisenstein_divisor(size):
    """The sum of all basis divisors."""
    return DivisorOnS((1,) * size)


class PairingMatrix:
    """Gram matrix of the residual pairing on the basis divisors."""

    def __init__(self, p, basis, norm_offdiag, diag_res):
        self.p = p
        self.basis = basis
        self.d = math.gcd(p - 1, 12)
        self._norm = norm_offdiag  # int64 (g+1)x(g+1), diagonal unused
        self._diag_res = diag_res  # int64 vector
        self._n = basis.lambdas[0].n

    @property
    def size(self):
        return len(self.basis.lambdas)

    def entry(self, i, j):
        if i == j:
            return ResidualClass(1, Fp2Element(self.p, int(self._diag_res[i]), 0, self._n))
        return ResidualClass(0, Fp2Element(self.p, int(self._norm[i, j]), 0, self._n))

    @property
    def entries(self):
        return tuple(
            tuple(self.entry(i, j) for j in range(self.size)) for i in range(self.size)
        )

    def residue_array(self):
        """Residues as an integer matrix (diagonal included)."""
        out = self._norm.copy()
        np.fill_diagonal(out, self._diag_res)
        return out

    def valuation_array(self):
        return np.eye(self.size, dtype=np.int64)


def build_pairing_matrix(p):
    """Pairing matrix over the sorted lambda-invariants for the prime p."""
    basis = supersingular_lambdas(p)
    from . import kernels

    ops = kernels.ops_for(p)
    la = np.array([lam.a for lam in basis.lambdas], dtype=np.int64)
    lb = np.array([lam.b for lam in basis.lambdas], dtype=np.int64)
    n = basis.lambdas[0].n
    norm = ops.norm_pair_matrix(la, lb, n)
    g1 = norm.shape[0]
    off = norm.copy()
    np.fill_diagonal(off, 1)
    row_prod = _fold_prod_mod(off, p)
    diag_res = np.array([pow(int(v), p - 2, p) for v in row_prod], dtype=np.int64)
    if g1 > 1 and np.any(norm[~np.eye(g1, dtype=bool)] == 0):
        raise AssertionError("two distinct lambda-invariants with equal norm difference 0")
    return PairingMatrix(p, basis, norm, diag_res)


def _fold_prod_mod(mat, p):
    """Row products mod p by pairwise folding (no overflow, no Python loops)."""
    cur = mat % p
    while cur.shape[1] > 1:
        k = cur.shape[1]
        half = k // 2
        folded = cur[:, :half] * cur[:, half : 2 * half] % p
        if k % 2:
            folded[:, 0] = folded[:, 0] * cur[:, -1] % p
        cur = folded
    return cur[:, 0]


def pair_divisors(matrix, a, b):
    """Pairing of two divisors, bilinearly from the matrix entries."""
    ca = a.coefficients if isinstance(a, DivisorOnS) else tuple(a)
    cb = b.coefficients if isinstance(b, DivisorOnS) else tuple(b)
    if len(ca) != matrix.size or len(cb) != matrix.size:
        raise ValueError("divisor length does not match the basis")
    p = matrix.p
    val = sum(x * y for x, y in zip(ca, cb))
    res = 1
    order = p - 1
    residues = matrix.residue_array()
    for i, x in enumerate(ca):
        if x == 0:
            continue
        for j, y in enumerate(cb):
            e = x * y
            if e == 0:
                continue
            res = res * pow(int(residues[i, j]), e % order, p) % p
    if res == 0:
        raise AssertionError("pairing residue vanished")
    return ResidualClass(val, Fp2Element(p, res, 0, matrix._n))


def eisenstein_check(matrix):
    """Each row multiplies to (1, 1): pairing any e_i with the full sum."""
    p = matrix.p
    res = matrix.residue_array()
    row_prods = _fold_prod_mod(res, p)
    return bool(np.all(row_prods == 1))


def valuation_gram(matrix):
    """Valuations of the pairing on the degree-zero basis e_i - e_0, i >= 1."""
    g = matrix.size - 1
    vals = matrix.valuation_array()
    gram = [
        [
            int(vals[i, j] - vals[i, 0] - vals[0, j] + vals[0, 0])
            for j in range(1, g + 1)
        ]
        for i in range(1, g + 1)
    ]
    return gram


# largest entry magnitude for which the int64 cross products cannot overflow
_BAREISS_GUARD = 1 << 30


def _bareiss_python(m, prev=1):
    """Fraction-free elimination on a list-of-lists block, exact at any size."""
    n = len(m)
    sign = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def integer_det(rows):
    """Exact determinant of an integer matrix (fraction-free Bareiss).

    Elimination runs vectorized on int64 while every entry stays below the
    overflow guard; a block whose entries outgrow it is handed to the
    arbitrary-precision version, continuing from the same recurrence."""
    clean = [list(map(int, r)) for r in rows]
    n = len(clean)
    if n == 1:
        return clean[0][0]
    try:
        m = np.array(clean, dtype=np.int64)
    except OverflowError:
        return _bareiss_python(clean)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            nz = np.nonzero(m[k + 1 :, k])[0]
            if nz.size == 0:
                return 0
            r = k + 1 + int(nz[0])
            m[[k, r]] = m[[r, k]]
            sign = -sign
        if int(np.abs(m[k:, k:]).max()) > _BAREISS_GUARD:
            return sign * _bareiss_python(m[k:, k:].tolist(), prev)
        block = m[k + 1 :, k + 1 :]
        block *= m[k, k]
        block -= np.outer(m[k + 1 :, k], m[k, k + 1 :])
        block //= prev
        prev = int(m[k, k])
    return sign * int(m[n - 1, n - 1])


def frobenius_equivariance_check(matrix):
    """entry(sigma i, sigma j) equals the Frobenius image of entry(i, j)."""
    perm = np.array(matrix.basis.frobenius_perm, dtype=np.intp)
    res = matrix.residue_array()
    # residues are rational, so Frobenius fixes them entrywise
    permuted = res[perm][:, perm]
    if not np.array_equal(permuted, res):
        return False
    vals = matrix.valuation_array()
    return np.array_equal(vals[perm][:, perm], vals)


def rationality_check(matrix, sample_limit=2000):
    """Residues lie in F_p.  Recomputes entries straight from the definition
    (lambda_i - lambda_j)^(p+1) on all pairs (or a seeded sample when the
    matrix is large) and compares with the stored norm-form values."""
    size = matrix.size
    lam = matrix.basis.lambdas
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j]
    if len(pairs) > sample_limit:
        rng = random.Random(matrix.p)
        pairs = rng.sample(pairs, sample_limit)
    p1 = matrix.p + 1
    for i, j in pairs:
        direct = (lam[i] - lam[j]) ** p1
        if not direct.is_rational():
            return False
        if direct.a != int(matrix._norm[i, j]):
            return False
    return True


def twelfth_power_table(matrix):
    """Entrywise (12/d)-th powers, d = gcd(p-1, 12)."""
    k = 12 // matrix.d
    return tuple(
        tuple(matrix.entry(i, j) ** k for j in range(matrix.size))
        for i in range(matrix.size)
    )
