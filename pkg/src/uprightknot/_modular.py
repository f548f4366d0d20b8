"""Exact evaluation of sums of separable triple products.

The numerator of theta is a sum of terms ``a(T1) * b(T1*T2) * h(T2)``.  With
coefficient arrays ``A[t, x]``, ``B[t, y]``, ``H[t, z]`` the result is

    N[x + y, y + z] = sum_t A[t, x] * B[t, y] * H[t, z]

which is a batched matrix product.  It is computed modulo several primes
with float64 BLAS (exact while every partial sum stays below 2**53) and
lifted back to integers by the Chinese remainder theorem.  The number of
primes comes from the l1 bound ``sum_t |a_t|_1 |b_t|_1 |h_t|_1``.
"""
from __future__ import annotations

from math import isqrt

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_below(limit: int, count: int) -> list[int]:
    out = []
    p = limit - 1
    while len(out) < count:
        if p < 3:
            raise ValueError("ran out of primes")
        if _is_prime(p):
            out.append(p)
        p -= 1
    return out


def l1_bound(A: np.ndarray, B: np.ndarray, H: np.ndarray) -> int:
    """``sum_t |A_t|_1 * |B_t|_1 * |H_t|_1`` for object arrays of Python ints."""
    na = np.abs(A).sum(axis=1)
    nb = np.abs(B).sum(axis=1)
    nh = np.abs(H).sum(axis=1)
    return int((na * nb * nh).sum()) if len(na) else 0


def _residues(M: np.ndarray, p: int) -> np.ndarray:
    return (M % p).astype(np.int64)


def contract(A: np.ndarray, B: np.ndarray, H: np.ndarray) -> np.ndarray:
    """Exact ``N[x+y, y+z] = sum_t A[t,x] B[t,y] H[t,z]`` as an object array.

    ``A``, ``B``, ``H`` are 2-d object arrays of Python ints sharing the
    first (term) axis.
    """
    t, X = A.shape
    Y = B.shape[1]
    Z = H.shape[1]
    out_shape = (X + Y - 1, Y + Z - 1)
    if t == 0:
        return np.zeros(out_shape, dtype=object)
    bound = l1_bound(A, B, H)
    if bound == 0:
        return np.zeros(out_shape, dtype=object)
    pmax = isqrt((1 << 53) // (t + 1))
    pmax = min(pmax, 1 << 26)
    need = (2 * bound + 1).bit_length()
    count = need // (pmax.bit_length() - 1) + 1
    primes = primes_below(pmax, count)

    residues = []
    for p in primes:
        Ap = _residues(A, p)
        Bp = _residues(B, p).astype(np.float64)
        Hp = _residues(H, p)
        Np = np.zeros(out_shape, dtype=np.int64)
        for x in range(X):
            col = Ap[:, x]
            if not col.any():
                continue
            W = (col[:, None] * Hp) % p  # t x Z
            C = (W.T.astype(np.float64) @ Bp)  # Z x Y, exact below 2**53
            C = np.rint(C).astype(np.int64) % p
            for y in range(Y):
                Np[x + y, y:y + Z] += C[:, y]
            Np %= p
        residues.append(Np)

    # Garner-style CRT on object arrays
    x = residues[0].astype(object)
    M = primes[0]
    for p, r in zip(primes[1:], residues[1:]):
        inv = pow(M % p, -1, p)
        diff = (r.astype(object) - x) % p
        x = x + M * ((diff * inv) % p)
        M *= p
    half = M // 2
    x = np.where(x > half, x - M, x)
    return x
