"""Integer-polynomial kernels: Kronecker packing and fraction-free elimination.

A polynomial ``p(T)`` with integer coefficients is represented by the single
integer ``p(2**K)``.  Ring operations in ``Z[T]`` become integer operations,
and exact polynomial divisions (the only kind Bareiss elimination performs)
become exact integer divisions.  Decoding back to coefficients is valid as
long as every coefficient of the decoded polynomial is below ``2**(K-1)`` in
absolute value; callers choose ``K`` from an a-priori bound.
"""
from __future__ import annotations


class SingularMatrix(ArithmeticError):
    """The matrix has zero determinant."""


def pack(coeffs, K: int) -> int:
    """``sum(c_k * 2**(K*k))`` for a dense coefficient list."""
    v = 0
    for c in reversed(coeffs):
        v = (v << K) + c
    return v


def unpack(v: int, K: int, length: int) -> list[int]:
    """Inverse of :func:`pack` for signed coefficients of magnitude < 2**(K-1)."""
    if length <= 0:
        if v:
            raise ValueError("nonzero value does not fit in zero digits")
        return []
    if K % 8:
        raise ValueError("digit width must be a multiple of 8")
    half = 1 << (K - 1)
    # bias every digit into [0, 2**K) so the byte string splits cleanly
    bias = half * (((1 << (K * length)) - 1) // ((1 << K) - 1))
    w = v + bias
    if w < 0 or w.bit_length() > K * length:
        raise ValueError("value does not fit the requested digit layout")
    nb = K // 8
    raw = w.to_bytes(nb * length, "little")
    return [
        int.from_bytes(raw[k * nb:(k + 1) * nb], "little") - half
        for k in range(length)
    ]


def digit_width(bound: int) -> int:
    """Smallest multiple of 8 bits holding signed values of magnitude <= bound."""
    bits = max(int(bound), 1).bit_length() + 1
    return (bits + 7) // 8 * 8


def bareiss_adjugate(M: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Determinant and adjugate of a square integer matrix.

    Fraction-free Gauss-Jordan elimination on ``[M | I]``.  Every
    intermediate entry is a minor of the augmented matrix, so each division
    by the previous pivot is exact.  Row swaps are tracked for the sign.
    """
    n = len(M)
    aug = [list(row) + [1 if c == r else 0 for c in range(n)] for r, row in enumerate(M)]
    width = 2 * n
    sign = 1
    prev = 1
    for k in range(n):
        p = k
        while p < n and aug[p][k] == 0:
            p += 1
        if p == n:
            raise SingularMatrix("zero determinant")
        if p != k:
            aug[k], aug[p] = aug[p], aug[k]
            sign = -sign
        pk = aug[k]
        piv = pk[k]
        for i in range(n):
            if i == k:
                continue
            ri = aug[i]
            f = ri[k]
            if f:
                for c in range(width):
                    if c == k:
                        continue
                    rc, kc = ri[c], pk[c]
                    if kc:
                        ri[c] = (piv * rc - f * kc) // prev
                    elif rc:
                        ri[c] = piv * rc // prev
                ri[k] = 0
            elif piv != prev:
                for c in range(width):
                    rc = ri[c]
                    if rc:
                        ri[c] = piv * rc // prev
        prev = piv
    det = sign * prev
    adj = [[sign * x for x in row[n:]] for row in aug]
    return det, adj


def bareiss_det(M: list[list[int]]) -> int:
    """Determinant only: forward fraction-free elimination."""
    n = len(M)
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n):
        p = k
        while p < n and a[p][k] == 0:
            p += 1
        if p == n:
            raise SingularMatrix("zero determinant")
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        pk = a[k]
        piv = pk[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for c in range(k + 1, n):
                rc, kc = ri[c], pk[c]
                if f and kc:
                    ri[c] = (piv * rc - f * kc) // prev
                elif rc:
                    ri[c] = piv * rc // prev
            ri[k] = 0
        prev = piv
    return sign * prev if n else 1
