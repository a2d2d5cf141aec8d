"""Batch Gauss-valuation kernel for the brute-force corrector oracle.

Elements of Z[pi]/(pi^E - p) are int64 vectors of length E reduced modulo p^K.
A candidate corrector H = sum_j h_j X^j (X = T^-1) is an array of shape (D, E).
The kernel returns E * v_r(F - H^p), capped, for every candidate in a batch.

Set SWANKINK_NO_NUMBA=1 to force the pure numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SWANKINK_NO_NUMBA", "") not in ("", "0")

try:  # optional accelerator
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def _vp(c, p):
    k = 0
    while c % p == 0:
        c //= p
        k += 1
    return k


def _make_kernels(vp, jit=lambda fn: fn):
    """Build the scalar and batch kernels around a p-adic valuation helper."""

    def one(H, F, p, E, K, rE, capE):
        mod = p ** K
        D = H.shape[0]
        size = max(p * (D - 1) + 1, F.shape[0])
        nF = F.shape[0]
        # P = H^p as a polynomial in X with ring coefficients
        P = np.zeros((size, E), dtype=np.int64)
        P[0, 0] = 1
        deg = 1
        for _ in range(p):
            Q = np.zeros((size, E), dtype=np.int64)
            for a in range(deg):
                for b in range(D):
                    for i in range(E):
                        x = P[a, i]
                        if x == 0:
                            continue
                        for k in range(E):
                            y = H[b, k]
                            if y == 0:
                                continue
                            t = (x * y) % mod
                            idx = i + k
                            if idx >= E:
                                idx -= E
                                t = (t * p) % mod
                            Q[a + b, idx] = (Q[a + b, idx] + t) % mod
            P = Q
            deg = deg + D - 1
        best = capE
        for d in range(size):
            for i in range(E):
                f = F[d, i] if d < nF else 0
                c = (f - P[d, i]) % mod
                if c == 0:
                    continue
                v = E * vp(c, p) + i - d * rE
                if v < best:
                    best = v
        return best

    one = jit(one)

    def batch(Hs, F, p, E, K, rE, capE):
        out = np.empty(Hs.shape[0], dtype=np.int64)
        for n in range(Hs.shape[0]):
            out[n] = one(Hs[n], F, p, E, K, rE, capE)
        return out

    return one, jit(batch)


_vr_one, _vr_batch_py = _make_kernels(_vp)


def _ring_mul_np(A, B, p, E, mod):
    """Row-wise product in Z[pi]/(pi^E - p); A, B have shape (n, E)."""
    n = A.shape[0]
    out = np.zeros((n, E), dtype=np.int64)
    for i in range(E):
        a = A[:, i:i + 1]
        if not a.any():
            continue
        prod = (a * B) % mod
        # columns k with i + k < E land at i + k; the rest wrap with a factor p
        out[:, i:] = (out[:, i:] + prod[:, :E - i]) % mod
        if i:
            out[:, :i] = (out[:, :i] + (prod[:, E - i:] * p) % mod) % mod
    return out


def _vr_batch_np(Hs, F, p, E, K, rE, capE):
    mod = p ** K
    n, D, _ = Hs.shape
    size = max(p * (D - 1) + 1, F.shape[0])
    P = np.zeros((n, size, E), dtype=np.int64)
    P[:, 0, 0] = 1
    deg = 1
    for _ in range(p):
        Q = np.zeros_like(P)
        for a in range(deg):
            for b in range(D):
                Q[:, a + b] = (Q[:, a + b] + _ring_mul_np(P[:, a], Hs[:, b], p, E, mod)) % mod
        P = Q
        deg += D - 1
    Fp = np.zeros((size, E), dtype=np.int64)
    Fp[:F.shape[0]] = F
    C = (Fp[None, :, :] - P) % mod
    # E * v_p(c) + i - d * rE, with zeros ignored
    vp = np.zeros_like(C)
    work = C.copy()
    alive = work != 0
    for _ in range(K):
        step = alive & (work % p == 0)
        vp += step
        work = np.where(step, work // p, work)
        alive = step
    idx_i = np.arange(E)[None, None, :]
    idx_d = np.arange(size)[None, :, None]
    val = E * vp + idx_i - idx_d * rE
    val = np.where(C == 0, capE, val)
    return np.minimum(val.reshape(n, -1).min(axis=1), capE).astype(np.int64)


if HAVE_NUMBA:
    _vr_one_nb, _vr_batch_nb = _make_kernels(njit(_vp), njit)


def vr_batch(Hs, F, p, E, K, rE, capE, backend=None):
    """E * min(v_r(F - H^p), cap) for each H in the batch Hs (shape (n, D, E))."""
    Hs = np.ascontiguousarray(Hs, dtype=np.int64)
    F = np.ascontiguousarray(F, dtype=np.int64)
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return _vr_batch_nb(Hs, F, p, E, K, rE, capE)
    if backend == "numpy":
        return _vr_batch_np(Hs, F, p, E, K, rE, capE)
    if backend == "python":
        return _vr_batch_py(Hs, F, p, E, K, rE, capE)
    raise ValueError(f"unknown backend {backend}")
