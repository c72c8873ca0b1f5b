"""Integer kernels for F_p[y] arithmetic and F_{p^2} grid evaluation.

Two interchangeable implementations: pure numpy vector code and numba loops.
Coefficient arrays are int64, ascending degree, entries reduced mod p.  All
products stay far below 2^63 for p < 2^15, so the arithmetic is exact.

Use ops_for(p) to get the active implementation, or implementation(name)
to force one (the benchmark compares both).
"""

import numpy as np

from . import backend


def trim(a):
    """Drop trailing zero coefficients, keeping at least one entry."""
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return a[: nz[-1] + 1]


def is_zero(a):
    return a.size == 1 and a[0] == 0


class NumpyPolyOps:
    """Vectorized F_p[y] arithmetic; remainders use Barrett reduction."""

    name = "numpy"

    def __init__(self, p):
        self.p = p

    def mul(self, a, b):
        if is_zero(a) or is_zero(b):
            return np.zeros(1, dtype=np.int64)
        return np.convolve(a, b) % self.p

    def monic(self, a):
        a = trim(a)
        if is_zero(a):
            return a
        inv = pow(int(a[-1]), self.p - 2, self.p)
        return (a * inv) % self.p

    def _inv_series(self, f, k):
        # Newton iteration for f^{-1} mod y^k; requires f[0] != 0.
        p = self.p
        inv0 = pow(int(f[0]), p - 2, p)
        g = np.array([inv0], dtype=np.int64)
        m = 1
        while m < k:
            m2 = min(2 * m, k)
            fg = np.convolve(f[:m2], g) % p
            fg = fg[:m2]
            corr = (-fg) % p
            corr[0] = (corr[0] + 2) % p
            g = np.convolve(g, corr) % p
            g = g[:m2]
            m = m2
        return g

    def barrett(self, h):
        """Precompute the reversed-inverse used by rem_pre for modulus h."""
        h = trim(h)
        dh = h.size - 1
        if dh == 0:
            return None
        rev = h[::-1].copy()
        return self._inv_series(rev, max(dh - 1, 1))

    def rem_pre(self, a, h, hinv_rev):
        """Remainder of a mod monic h, using the precomputed Barrett inverse."""
        p = self.p
        a = trim(a % p)
        dh = h.size - 1
        da = a.size - 1
        if dh == 0:
            return np.zeros(1, dtype=np.int64)
        if da < dh:
            return a
        dq = da - dh
        rev_a = a[::-1]
        qrev = np.convolve(rev_a[: dq + 1], hinv_rev[: dq + 1]) % p
        q = qrev[: dq + 1][::-1]
        qh = np.convolve(q, h) % p
        r = (a[:dh] - qh[:dh]) % p
        return trim(r)

    def rem(self, a, h):
        h = self.monic(h)
        if h.size - 1 <= 0:
            return np.zeros(1, dtype=np.int64)
        return self.rem_pre(a, h, self.barrett(h))

    def divmod(self, a, h):
        p = self.p
        a = trim(np.asarray(a, dtype=np.int64) % p)
        h = trim(np.asarray(h, dtype=np.int64) % p)
        if is_zero(h):
            raise ZeroDivisionError("polynomial division by zero")
        dh = h.size - 1
        da = a.size - 1
        if da < dh:
            return np.zeros(1, dtype=np.int64), a
        lead_inv = pow(int(h[-1]), p - 2, p)
        r = a.copy()
        q = np.zeros(da - dh + 1, dtype=np.int64)
        for i in range(da, dh - 1, -1):
            c = r[i] % p
            if c:
                f = c * lead_inv % p
                q[i - dh] = f
                r[i - dh : i + 1] = (r[i - dh : i + 1] - f * h) % p
        return trim(q), trim(r)

    def gcd(self, a, b):
        a = trim(np.asarray(a, dtype=np.int64) % self.p)
        b = trim(np.asarray(b, dtype=np.int64) % self.p)
        while not is_zero(b):
            _, r = self.divmod(a, b)
            a, b = b, r
        return self.monic(a)

    def powmod(self, base, e, h):
        """base^e mod h for monic h; e is a nonnegative Python int."""
        h = self.monic(h)
        hinv = self.barrett(h)
        result = np.ones(1, dtype=np.int64)
        acc = self.rem_pre(base, h, hinv)
        while e:
            if e & 1:
                result = self.rem_pre(self.mul(result, acc), h, hinv)
            e >>= 1
            if e:
                acc = self.rem_pre(self.mul(acc, acc), h, hinv)
        return result

    def eval_fp(self, coeffs):
        """Values of the polynomial at 0, 1, ..., p-1."""
        p = self.p
        xs = np.arange(p, dtype=np.int64)
        vals = np.zeros(p, dtype=np.int64)
        for c in coeffs[::-1]:
            vals = (vals * xs + int(c)) % p
        return vals

    def fp2_root_mask(self, coeffs, n):
        """Boolean (p, p) mask: entry [a, b] marks a root a + b*x, x^2 = n."""
        p = self.p
        aa = np.arange(p, dtype=np.int64)[:, None]
        bb = np.arange(p, dtype=np.int64)[None, :]
        va = np.zeros((p, p), dtype=np.int64)
        vb = np.zeros((p, p), dtype=np.int64)
        for c in coeffs[::-1]:
            va, vb = (va * aa + n * vb * bb + int(c)) % p, (va * bb + vb * aa) % p
        return (va == 0) & (vb == 0)

    def norm_pair_matrix(self, la, lb, n):
        """Matrix of Norm(lambda_i - lambda_j) = (a_i-a_j)^2 - n (b_i-b_j)^2 mod p."""
        p = self.p
        da = la[:, None] - la[None, :]
        db = lb[:, None] - lb[None, :]
        return (da * da - n * db * db) % p


def _nb_mul(a, b, p):
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in range(a.size):
        ai = a[i]
        if ai:
            for j in range(b.size):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def _nb_rem(a, h, lead_inv, p):
    # h monic after scaling by lead_inv; remainder of a mod h.
    r = a % p
    dh = h.size - 1
    for i in range(r.size - 1, dh - 1, -1):
        c = r[i] % p
        if c:
            f = c * lead_inv % p
            for j in range(dh + 1):
                r[i - dh + j] = (r[i - dh + j] - f * h[j]) % p
    return r


def _nb_eval_fp(coeffs, p):
    vals = np.zeros(p, dtype=np.int64)
    for k in range(coeffs.size - 1, -1, -1):
        c = coeffs[k]
        for x in range(p):
            vals[x] = (vals[x] * x + c) % p
    return vals


def _nb_fp2_root_mask(coeffs, p, n):
    mask = np.zeros((p, p), dtype=np.bool_)
    for a in range(p):
        for b in range(p):
            va = 0
            vb = 0
            for k in range(coeffs.size - 1, -1, -1):
                va, vb = (va * a + n * vb * b + coeffs[k]) % p, (va * b + vb * a) % p
            mask[a, b] = va == 0 and vb == 0
    return mask


def _nb_norm_pair(la, lb, p, n):
    m = la.size
    out = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            da = la[i] - la[j]
            db = lb[i] - lb[j]
            out[i, j] = (da * da - n * db * db) % p
    return out


class NumbaPolyOps(NumpyPolyOps):
    """F_p[y] arithmetic backed by numba-compiled loops."""

    name = "numba"

    _compiled = None

    def __init__(self, p):
        super().__init__(p)
        cls = NumbaPolyOps
        if cls._compiled is None:
            cls._compiled = {
                "mul": backend.compile_loops(_nb_mul),
                "rem": backend.compile_loops(_nb_rem),
                "eval_fp": backend.compile_loops(_nb_eval_fp),
                "fp2_root_mask": backend.compile_loops(_nb_fp2_root_mask),
                "norm_pair": backend.compile_loops(_nb_norm_pair),
            }

    def mul(self, a, b):
        if is_zero(a) or is_zero(b):
            return np.zeros(1, dtype=np.int64)
        return self._compiled["mul"](a, b, self.p)

    def rem(self, a, h):
        h = self.monic(h)
        if h.size - 1 <= 0:
            return np.zeros(1, dtype=np.int64)
        return trim(self._compiled["rem"](trim(a), h, 1, self.p))

    def powmod(self, base, e, h):
        h = self.monic(h)
        rem = self._compiled["rem"]
        mul = self._compiled["mul"]
        p = self.p
        result = np.ones(1, dtype=np.int64)
        acc = trim(rem(trim(base), h, 1, p))
        while e:
            if e & 1:
                result = trim(rem(mul(result, acc, p), h, 1, p))
            e >>= 1
            if e:
                acc = trim(rem(mul(acc, acc, p), h, 1, p))
        return result

    def eval_fp(self, coeffs):
        return self._compiled["eval_fp"](np.asarray(coeffs, dtype=np.int64), self.p)

    def fp2_root_mask(self, coeffs, n):
        return self._compiled["fp2_root_mask"](
            np.asarray(coeffs, dtype=np.int64), self.p, n
        )

    def norm_pair_matrix(self, la, lb, n):
        return self._compiled["norm_pair"](la, lb, self.p, n)


_IMPLS = {"numpy": NumpyPolyOps, "numba": NumbaPolyOps}


def implementation(name):
    """Return the ops class for an explicit backend name."""
    if name == "numba" and backend.numba is None:
        raise RuntimeError("numba backend requested but numba is not importable")
    return _IMPLS[name]


def ops_for(p, backend_name=None):
    """Ops instance for prime p on the active (or an explicit) backend."""
    return implementation(backend_name or backend.ACTIVE_BACKEND)(p)
