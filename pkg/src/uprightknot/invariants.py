"""The Alexander polynomial, rho1 and theta of an upright long-knot diagram.

Everything is driven by the matrix

    A = I - sum over crossings (s, i, j) of
            T^s E[i, i+1] + (1 - T^s) E[i, j+1] + E[j, j+1]

and its inverse ``G = A^-1``, whose entries ``g[a, b]`` are rational
functions ``adj(A)[a, b] / det(A)``.  All arithmetic is exact.

For speed the numerators of rho1 and theta are assembled over the common
denominators ``det(A)^2`` and ``det1*det2*det3*(T2 - 1)`` rather than by
adding rational functions.  The slower term-by-term evaluation lives in
:mod:`uprightknot.verify`, which uses it to cross-check the fast path.
"""
from __future__ import annotations

import time
from fractions import Fraction
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _linalg, _modular
from .diagram import UprightDiagram
from .poly import (
    HalfIntegerExponentRemains,
    LaurentPoly1,
    LaurentPoly2,
    RationalFunc1,
    RationalFunc2,
    Target,
    exact_divide,
)

SingularMatrix = _linalg.SingularMatrix

__all__ = [
    "AMatrix",
    "GreenData",
    "InvariantResult",
    "SingularMatrix",
    "build_matrix",
    "green",
    "alexander",
    "rho1",
    "theta",
    "theta_numerator",
    "specialize_theta",
    "compute_all",
    "rho1_symbolic",
    "theta_symbolic",
]


# ------------------------------------------------------------------ A matrix


@dataclass(frozen=True)
class AMatrix:
    """Sparse square matrix of Laurent polynomials, indexed from 1."""

    size: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, rc) -> LaurentPoly1:
        return self.entries.get(rc, LaurentPoly1.zero())

    def row(self, r: int) -> dict[int, LaurentPoly1]:
        return {c: p for (rr, c), p in self.entries.items() if rr == r}

    def dense(self) -> list[list[LaurentPoly1]]:
        return [[self[r, c] for c in range(1, self.size + 1)] for r in range(1, self.size + 1)]

    @classmethod
    def identity(cls, size: int) -> "AMatrix":
        one = LaurentPoly1.one()
        return cls(size, {(k, k): one for k in range(1, size + 1)})

    @classmethod
    def from_dense(cls, rows) -> "AMatrix":
        entries = {}
        for r, row in enumerate(rows, 1):
            for c, p in enumerate(row, 1):
                if not isinstance(p, LaurentPoly1):
                    p = LaurentPoly1.constant(p)
                if p:
                    entries[r, c] = p
        return cls(len(rows), entries)


def build_matrix(D: UprightDiagram) -> AMatrix:
    m = D.edge_count
    T = LaurentPoly1.T()
    entries = {(k, k): LaurentPoly1.one() for k in range(1, m + 1)}

    def sub(r, c, p):
        v = entries.get((r, c), LaurentPoly1.zero()) - p
        if v:
            entries[r, c] = v
        else:
            entries.pop((r, c), None)

    for c in D.crossings:
        Ts = T ** c.sign
        sub(c.over, c.over + 1, Ts)
        sub(c.over, c.under + 1, 1 - Ts)
        sub(c.under, c.under + 1, LaurentPoly1.one())
    return AMatrix(m, entries)


# --------------------------------------------------------------- elimination


def _chains(A: AMatrix):
    """Rows of the form ``e_r - e_t`` (unit pivots) and where they lead.

    Returns ``(end, chain, core, rows)``: ``end[r]`` is the first non-unit
    row reached from ``r`` by following ``t``; ``chain[r]`` the unit rows
    passed on the way (``r`` included when it is a unit row); ``core`` the
    sorted non-unit rows; ``rows`` the sparse rows of ``A``.  A cycle of
    unit rows (possible only for a singular matrix) disables the reduction.
    """
    m = A.size
    link = {}
    rows: dict[int, dict] = {r: {} for r in range(1, m + 1)}
    for (r, c), p in A.entries.items():
        rows[r][c] = p
    one, minus = LaurentPoly1.one(), LaurentPoly1.constant(-1)
    for r, row in rows.items():
        if len(row) == 2 and row.get(r) == one:
            (t,) = [c for c in row if c != r]
            if row[t] == minus:
                link[r] = t
    end, chain = {}, {}
    for r in range(1, m + 1):
        seen = []
        x = r
        while x in link:
            seen.append(x)
            x = link[x]
            if len(seen) > m:
                every = list(range(1, m + 1))
                return {e: e for e in every}, {e: [] for e in every}, every, rows
        end[r] = x
        chain[r] = seen
    core = sorted(r for r in rows if r not in link)
    return end, chain, core, rows


class GreenData:
    """``det(A)`` and ``adj(A)``; ``g(a, b) = adj[a][b] / det``.

    The adjugate is stored densely as integer coefficient lists sharing one
    lowest exponent ``lo``; :meth:`adj` converts entries to
    :class:`LaurentPoly1` on demand.
    """

    def __init__(self, size, det_lo, det_coeffs, adj_lo, adj_coeffs):
        self.size = size
        self.det_lo = det_lo
        self.det_coeffs = det_coeffs
        self.adj_lo = adj_lo
        self._adj = adj_coeffs  # [a-1][b-1] -> list[int]
        self._cache: dict = {}

    @cached_property
    def det(self) -> LaurentPoly1:
        return LaurentPoly1.from_coeffs(self.det_lo, self.det_coeffs)

    def adj(self, a: int, b: int) -> LaurentPoly1:
        key = (a, b)
        p = self._cache.get(key)
        if p is None:
            p = LaurentPoly1.from_coeffs(self.adj_lo, self._adj[a - 1][b - 1])
            self._cache[key] = p
        return p

    def adj_coeffs(self, a: int, b: int) -> list[int]:
        return self._adj[a - 1][b - 1]

    def g(self, a: int, b: int) -> RationalFunc1:
        return RationalFunc1(self.adj(a, b), self.det)

    def adj_array(self) -> np.ndarray:
        """Object array ``[a, b, k]`` (0-based a, b) of adjugate coefficients."""
        L = len(self._adj[0][0]) if self.size else 0
        arr = np.zeros((self.size, self.size, L), dtype=object)
        for a, row in enumerate(self._adj):
            for b, cs in enumerate(row):
                arr[a, b, :] = cs
        return arr

    def perturbed(self, a: int, b: int, delta: int = 1) -> "GreenData":
        """Copy with ``delta`` added to the constant term of ``adj[a][b]`` (mutation tests)."""
        adj = [[list(cs) for cs in row] for row in self._adj]
        cs = adj[a - 1][b - 1]
        k = -self.adj_lo
        if not 0 <= k < len(cs):
            raise ValueError("constant term outside stored range")
        cs[k] += delta
        return GreenData(self.size, self.det_lo, list(self.det_coeffs), self.adj_lo, adj)


def _row_shift(row: dict) -> int:
    lows = [p.min_exponent() for p in row.values()]
    return max(0, -min(lows + [0]))


def green(A: AMatrix) -> GreenData:
    """Exact determinant and adjugate of ``A``.

    Rows of the form ``e_r - e_t`` (the under-crossing rows of an upright
    diagram) have unit pivots; eliminating them first leaves a core system
    ``B y = C b`` of about half the size.  ``B`` is reduced by fraction-free
    Gauss-Jordan elimination in ``Z[T]``, encoded by Kronecker substitution
    ``T -> 2**K``, and ``adj(A)`` is reassembled from ``adj(B) * C``.
    """
    m = A.size
    if m == 0:
        raise ValueError("empty matrix")
    end, chain, core, rows = _chains(A)
    for row in rows.values():
        for p in row.values():
            if not p.is_integral() or not p.has_integer_coefficients():
                raise ValueError("green() needs integer coefficients and exponents")
    pos = {e: idx for idx, e in enumerate(core)}
    ncore = len(core)
    chain_sets = {r: set(chain[r]) for r in range(1, m + 1)}

    # B'[e] and C'[e] as integer polynomial dicts {exp: coeff} after the row shift
    Bp: list[dict[int, dict[int, int]]] = []
    Cp: list[dict[int, dict[int, int]]] = []
    shifts = []
    for e in core:
        row = rows[e]
        d = _row_shift(row)
        shifts.append(d)
        brow: dict[int, dict[int, int]] = {}
        crow: dict[int, dict[int, int]] = {e: {d: 1}}
        for c, p in row.items():
            terms = {ex + d: co for ex, co in p.terms()}
            tgt = pos[end[c]]
            acc = brow.setdefault(tgt, {})
            for ex, co in terms.items():
                acc[ex] = acc.get(ex, 0) + co
            for u in chain[c]:
                acc2 = crow.setdefault(u, {})
                for ex, co in terms.items():
                    acc2[ex] = acc2.get(ex, 0) - co
        Bp.append({k: {ex: co for ex, co in v.items() if co} for k, v in brow.items()})
        Cp.append({k: {ex: co for ex, co in v.items() if co} for k, v in crow.items()})

    # Every coefficient of det(A) and of every cofactor is at most the
    # product of the row l1 norms (expand the determinant), so K digits
    # decode exactly.
    bound = 1
    for row in rows.values():
        bound *= max(1, sum(p.l1_norm() for p in row.values()))
    K = _linalg.digit_width(bound)

    def deg(row):
        return max((ex for poly in row.values() for ex in poly), default=0)

    # adj(A)[a, b] * T^(sum d) = adj(T^d A)[a, b] * T^(d_b)
    length = sum(max(deg(b), deg(c)) for b, c in zip(Bp, Cp)) + max(shifts, default=0) + 1

    def ev(poly):
        return sum(co << (K * ex) for ex, co in poly.items())

    Bint = [[0] * ncore for _ in range(ncore)]
    for r, brow in enumerate(Bp):
        for c, poly in brow.items():
            Bint[r][c] = ev(poly)
    Cint = [{c: ev(poly) for c, poly in crow.items()} for crow in Cp]

    detB, adjB = _linalg.bareiss_adjugate(Bint)

    # P[e][beta] = sum_f adjB[e][f] * C'[f][beta]
    P = [[0] * (m + 1) for _ in range(ncore)]
    for f, crow in enumerate(Cint):
        for beta, val in crow.items():
            for e in range(ncore):
                a = adjB[e][f]
                if a:
                    P[e][beta] += a * val

    total_shift = sum(shifts)
    det_coeffs = _linalg.unpack(detB, K, length)
    adj = []
    for alpha in range(1, m + 1):
        Prow = P[pos[end[alpha]]]
        cs = chain_sets[alpha]
        out_row = []
        for beta in range(1, m + 1):
            v = Prow[beta]
            if beta in cs:
                v += detB
            out_row.append(_linalg.unpack(v, K, length))
        adj.append(out_row)

    gd = GreenData(m, -total_shift, det_coeffs, -total_shift, adj)
    _check_adjugate(A, gd, K)
    if gd.det.is_zero():
        raise SingularMatrix("det(A) = 0")
    return gd


def _check_adjugate(A: AMatrix, gd: GreenData, K: int):
    """Check ``A * adj = det * I`` at ``T = 2**K``.

    This guards the elimination and the reassembly from the reduced system;
    exact decoding itself is guaranteed by the choice of ``K``.
    """
    m = A.size
    packed = [[_linalg.pack(cs, K) for cs in row] for row in gd._adj]
    detv = _linalg.pack(gd.det_coeffs, K)
    # (T^d A)(T^-lo adj) = T^d (T^-lo det) I, d making row r polynomial
    for r in range(1, m + 1):
        row = A.row(r)
        d = _row_shift(row)
        vals = {}
        for c, p in row.items():
            lo, cs = p.shift(d).integer_coeffs()
            vals[c] = _linalg.pack(cs, K) << (K * lo)
        for beta in range(1, m + 1):
            s = sum(v * packed[c - 1][beta - 1] for c, v in vals.items())
            want = detv << (K * d) if beta == r else 0
            if s != want:
                raise ArithmeticError(f"adjugate check failed at ({r}, {beta})")


def _det_only(A: AMatrix) -> LaurentPoly1:
    """Determinant without the adjugate (reduced core, forward elimination)."""
    end, chain, core, rows = _chains(A)
    pos = {e: idx for idx, e in enumerate(core)}
    polys = []
    shifts = []
    for e in core:
        row = rows[e]
        d = _row_shift(row)
        shifts.append(d)
        brow: dict[int, dict[int, int]] = {}
        for c, p in row.items():
            acc = brow.setdefault(pos[end[c]], {})
            for ex, co in p.terms():
                acc[ex + d] = acc.get(ex + d, 0) + co
        polys.append(brow)
    bound = 1
    length = 1
    for brow in polys:
        bound *= max(1, sum(abs(co) for poly in brow.values() for co in poly.values()))
        length += max((ex for poly in brow.values() for ex in poly), default=0)
    K = _linalg.digit_width(bound)
    n = len(core)
    M = [[0] * n for _ in range(n)]
    for r, brow in enumerate(polys):
        for c, poly in brow.items():
            M[r][c] = sum(co << (K * ex) for ex, co in poly.items())
    det = _linalg.bareiss_det(M)
    return LaurentPoly1.from_coeffs(-sum(shifts), _linalg.unpack(det, K, length))


# ---------------------------------------------------------------- invariants


def _normalizer(D: UprightDiagram):
    """``(-phi(D) - w(D)) / 2``; raises when it is not an integer."""
    total = -D.total_rotation - D.writhe
    if total % 2:
        raise HalfIntegerExponentRemains(
            f"phi(D) + w(D) = {-total} is odd; the diagram data is inconsistent"
        )
    return total // 2


def alexander(D: UprightDiagram, gd: GreenData | None = None) -> LaurentPoly1:
    """Normalised Alexander polynomial ``T^((-phi-w)/2) det(A)``."""
    det = gd.det if gd is not None else _det_only(build_matrix(D))
    if det.is_zero():
        raise SingularMatrix("det(A) = 0")
    half = LaurentPoly1.monomial(Fraction(-(D.total_rotation + D.writhe), 2))
    return (half * det).assert_integral_exponents()


def _conv(p: list[int], q: list[int]) -> list[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return out


def _lin(*pairs):
    """Linear combination of equal-length coefficient lists: pairs of (coeff, list)."""
    L = max(len(v) for _, v in pairs)
    out = [0] * L
    for c, v in pairs:
        if c:
            for k, x in enumerate(v):
                out[k] += c * x
    return out


def rho1(D: UprightDiagram, gd: GreenData | None = None) -> LaurentPoly1:
    """Rozansky-Overbay invariant.

    With ``g = adj / det`` and ``Delta = T^nu det``, multiplying the defining
    sum by ``Delta^2`` clears every denominator, so

        2 rho1 = T^(2 nu) * [ sum_c s (2 adj_ji (adj_{j+1,j} + adj_{j,j+1} - adj_ij)
                                       - 2 adj_ii (adj_{j,j+1} - det) - det^2)
                              - sum_k phi_k (2 adj_kk det - det^2) ]

    is computed with integer arithmetic, then halved.
    """
    nu = _normalizer(D)
    if gd is None:
        gd = green(build_matrix(D))
    lo = gd.adj_lo
    L = len(gd.det_coeffs)
    det = list(gd.det_coeffs)
    if gd.det_lo != lo:
        raise ArithmeticError("det and adjugate offsets differ")
    adj = gd.adj_coeffs
    det2 = _conv(det, det)
    acc = [0] * (2 * L - 1)

    def add(c, v):
        for k, x in enumerate(v):
            acc[k] += c * x

    for c in D.crossings:
        s, i, j = c.sign, c.over, c.under
        gji, gij, gii = adj(j, i), adj(i, j), adj(i, i)
        gj1j, gjj1 = adj(j + 1, j), adj(j, j + 1)
        add(2 * s, _conv(gji, _lin((1, gj1j), (1, gjj1), (-1, gij))))
        add(-2 * s, _conv(gii, _lin((1, gjj1), (-1, det))))
        add(-s, det2)
    for k, phi in D.rotations:
        add(-2 * phi, _conv(adj(k, k), det))
        add(phi, det2)
    out = LaurentPoly1.from_coeffs(2 * lo + 2 * nu, acc)
    return (out / 2).assert_integral_exponents()


# theta ---------------------------------------------------------------------


class _Terms:
    """Collects separable terms ``coef * a(T1) * b(T3) * h(T2)``.

    Factors are dense integer lists with their own lowest exponents; they
    are aligned into object arrays by :meth:`arrays`.
    """

    def __init__(self):
        self.items = []

    def add(self, coef, a, b, h):
        if coef:
            self.items.append((coef, a, b, h))

    def arrays(self):
        if not self.items:
            return None
        lows = [min(t[k][0] for t in self.items) for k in (1, 2, 3)]
        highs = [max(t[k][0] + len(t[k][1]) for t in self.items) for k in (1, 2, 3)]
        mats = [np.zeros((len(self.items), hi - lo), dtype=object) for lo, hi in zip(lows, highs)]
        for idx, (coef, *polys) in enumerate(self.items):
            for axis, (plo, cs) in enumerate(polys):
                off = plo - lows[axis]
                row = mats[axis][idx]
                vals = [coef * x for x in cs] if axis == 0 else cs
                row[off:off + len(cs)] = vals
        return lows, mats


def _pmul(p, *factors):
    """Multiply a dense poly ``(lo, coeffs)`` by small dense polys."""
    lo, cs = p
    for flo, fcs in factors:
        lo += flo
        cs = _conv(cs, fcs)
    return lo, cs


def _mono(e):
    return (e, [1])


def _tm1(s):
    """``T^s - 1`` as a dense poly."""
    return (0, [-1, 1]) if s > 0 else (-1, [1, -1])


def _tp1(s):
    return (0, [1, 1]) if s > 0 else (-1, [1, 1])


def _tm2(s):
    return (0, [-2, 1]) if s > 0 else (-1, [1, -2])


def _kappa(s):
    """``2 s (T2 - 1) / (T2^s - 1)``: 2 for s = 1 and 2*T2 for s = -1."""
    return (0, [2]) if s > 0 else (1, [2])


def _f2_arrays(D: UprightDiagram, gd: GreenData, include_diagonal: bool):
    """F2 terms for all ordered crossing pairs as aligned object arrays.

    Pair ``(c0, c1)`` contributes ``a = (T1^s0 - 1) adj1[j1, i0]``,
    ``b = (T3^s1 - 1) adj3[j0, i1]`` and
    ``h = kappa(s1) (T2^s0 (adj2[i1,i0] - adj2[j1,i0]) + adj2[j1,j0] - adj2[i1,j0])``.
    Factors are stored with lowest exponent ``adj_lo - 1``.
    """
    n = D.n
    ADJ = gd.adj_array()
    L = ADJ.shape[2]
    S = np.array([c.sign for c in D.crossings])
    I = np.array([c.over - 1 for c in D.crossings])
    J = np.array([c.under - 1 for c in D.crossings])
    # index grids [c0, c1]
    i0, i1 = I[:, None], I[None, :]
    j0, j1 = J[:, None], J[None, :]
    s0 = np.broadcast_to(S[:, None], (n, n))
    s1 = np.broadcast_to(S[None, :], (n, n))

    def place(base, shift_of, width, out_lo_shift):
        out = np.zeros((n, n, width), dtype=object)
        for sh in np.unique(shift_of):
            mask = shift_of == sh
            k = sh + out_lo_shift
            out[mask, k:k + L] += base[mask]
        return out

    a_base = ADJ[j1, i0]
    a = place(a_base, np.where(s0 > 0, 1, -1), L + 2, 1) - place(a_base, np.zeros_like(s0), L + 2, 1)
    b_base = ADJ[j0, i1]
    b = place(b_base, np.where(s1 > 0, 1, -1), L + 2, 1) - place(b_base, np.zeros_like(s1), L + 2, 1)
    hi = ADJ[i1, i0] - ADJ[j1, i0]
    hj = ADJ[j1, j0] - ADJ[i1, j0]
    # kappa(s1) T2^s0 hi + kappa(s1) hj, stored from adj_lo - 1 to adj_lo + L + 1
    ksh = np.where(s1 > 0, 0, 1)
    h = 2 * (place(hi, np.where(s0 > 0, 1, -1) + ksh, L + 3, 1) + place(hj, ksh, L + 3, 1))
    if not include_diagonal:
        keep = ~np.eye(n, dtype=bool)
        a, b, h = a[keep], b[keep], h[keep]
    else:
        a, b, h = a.reshape(n * n, -1), b.reshape(n * n, -1), h.reshape(n * n, -1)
    lo = gd.adj_lo - 1
    return (lo, lo, lo), [a, b, h]


def _f1_f3_terms(D: UprightDiagram, gd: GreenData) -> _Terms:
    """F1 and F3 terms, times ``2 (T2 - 1) det1 det2 det3``."""
    lo = gd.adj_lo
    det = (gd.det_lo, list(gd.det_coeffs))

    def g(a, b):
        return (lo, gd.adj_coeffs(a, b))

    t = _Terms()
    u = (0, [-2, 2])  # 2 (T2 - 1)
    for c in D.crossings:
        s, i, j = c.sign, c.over, c.under
        Ts = _mono(s)
        # s * [ ... ] * 2 (T2 - 1)
        t.add(s, det, det, _pmul(det, (0, [-1, 1])))  # 1/2 term
        t.add(-s, det, g(i, i), _pmul(det, u))
        t.add(s, g(i, i), det, _pmul(g(j, i), Ts, u))
        t.add(-s, det, g(j, j), _pmul(g(j, i), Ts, u))
        t.add(-s, det, g(i, i), _pmul(g(j, i), _tm1(s), u))
        t.add(s, det, _pmul(g(j, i), _tm1(s)), _pmul(g(j, i), u))
        t.add(-s, g(i, i), det, _pmul(g(j, j), u))
        t.add(2 * s, det, g(i, i), _pmul(g(j, j), u))
        t.add(s, g(i, i), g(j, j), _pmul(det, u))
        t.add(-s, det, g(j, j), _pmul(g(i, i), u))
        # s / (T2^s - 1) * [ ... ] * 2 (T2 - 1) = kappa(s) * [ ... ]
        kap = _kappa(s)
        a_ji = _pmul(g(j, i), _tm1(s))  # (T1^s - 1) g1ji
        b_ji = _pmul(g(j, i), _tm1(s))  # (T3^s - 1) g3ji
        t.add(1, a_ji, g(j, j), _pmul(det, Ts, kap))
        t.add(-1, a_ji, det, _pmul(g(j, j), Ts, kap))
        t.add(1, a_ji, det, _pmul(g(j, i), _mono(2 * s), kap))
        t.add(1, det, b_ji, _pmul(det, kap))
        t.add(-1, g(i, i), b_ji, _pmul(det, Ts, kap))
        t.add(1, det, b_ji, _pmul(g(i, j), kap))
        t.add(1, det, b_ji, _pmul(g(j, j), _tm2(s), kap))
        t.add(-1, a_ji, b_ji, _pmul(det, _tp1(s), kap))
    for k, phi in D.rotations:
        t.add(2 * phi, det, g(k, k), _pmul(det, (0, [-1, 1])))
        t.add(-phi, det, det, _pmul(det, (0, [-1, 1])))
    return t


def _stack(parts):
    """Align several (lows, [A, B, H]) blocks into one."""
    parts = [p for p in parts if p is not None and p[1][0].shape[0]]
    if not parts:
        return None
    lows = [min(p[0][k] for p in parts) for k in range(3)]
    highs = [max(p[0][k] + p[1][k].shape[1] for p in parts) for k in range(3)]
    out = []
    for k in range(3):
        blocks = []
        for plows, mats in parts:
            M = mats[k]
            pad_lo = plows[k] - lows[k]
            pad_hi = highs[k] - (plows[k] + M.shape[1])
            Z = np.zeros((M.shape[0], M.shape[1] + pad_lo + pad_hi), dtype=object)
            Z[:, pad_lo:pad_lo + M.shape[1]] = M
            blocks.append(Z)
        out.append(np.concatenate(blocks, axis=0))
    return lows, out


def theta_numerator(
    D: UprightDiagram, gd: GreenData | None = None, include_diagonal: bool = True
) -> LaurentPoly2:
    """``N = 2 (T2 - 1) det1 det2 det3 (sum F1 + sum F2 + sum F3)`` exactly.

    ``theta = T1^(2 nu) T2^(2 nu) N / (2 (T2 - 1))``; the division by
    ``T2 - 1`` is exact precisely when the (T2^s - 1) denominators cancel.
    """
    if gd is None:
        gd = green(build_matrix(D))
    f1 = _f1_f3_terms(D, gd).arrays()
    f2 = _f2_arrays(D, gd, include_diagonal) if D.n else None
    stacked = _stack([f1, f2])
    if stacked is None:
        return LaurentPoly2.zero()
    (xlo, ylo, zlo), (A, B, H) = stacked
    N = _modular.contract(A, B, H)
    terms = {}
    for X, Z in zip(*np.nonzero(N != 0)):
        # T1 exponent x + y, T2 exponent y + z
        terms[(int(X) + xlo + ylo, int(Z) + ylo + zlo)] = int(N[X, Z])
    return LaurentPoly2.from_int_terms(terms)


def theta(
    D: UprightDiagram, gd: GreenData | None = None, include_diagonal: bool = True
) -> LaurentPoly2:
    """The two-variable invariant theta(D) in Q[T1^+-1, T2^+-1].

    Raises :class:`NotDivisible` if the accumulated numerator is not
    divisible by ``T2 - 1``, i.e. if the (T2^s - 1) denominators fail to
    cancel.  ``include_diagonal=False`` drops the ``c0 == c1`` pairs from
    the F2 double sum (diagnostic only).
    """
    nu = _normalizer(D)
    N = theta_numerator(D, gd, include_diagonal)
    q = exact_divide(N, LaurentPoly2.from_int_terms({(0, 1): 1, (0, 0): -1}))
    return (q.shift(2 * nu, 2 * nu) / 2).assert_integral_exponents()


def specialize_theta(th: LaurentPoly2) -> LaurentPoly1:
    """``T1 <- 1, T2 <- T``."""
    return th.specialize()


# ------------------------------------------------------------------ results


@dataclass(frozen=True)
class InvariantResult:
    delta: LaurentPoly1 | None
    rho1: LaurentPoly1 | None
    theta: LaurentPoly2 | None
    writhe: int
    total_rotation: int
    n: int = 0
    timings_ms: dict = field(default_factory=dict, compare=False)


def compute_all(
    D: UprightDiagram,
    which: tuple[str, ...] = ("delta", "rho1", "theta"),
    include_diagonal: bool = True,
) -> InvariantResult:
    """Selected invariants from a single elimination of ``A``."""
    timings = {}
    t0 = time.perf_counter()
    _normalizer(D)
    gd = None
    if {"rho1", "theta"} & set(which):
        gd = green(build_matrix(D))
        timings["green"] = (time.perf_counter() - t0) * 1e3
    out = {}
    for name in ("delta", "rho1", "theta"):
        if name not in which:
            out[name] = None
            continue
        t = time.perf_counter()
        if name == "delta":
            out[name] = alexander(D, gd)
        elif name == "rho1":
            out[name] = rho1(D, gd)
        else:
            out[name] = theta(D, gd, include_diagonal)
        timings[name] = (time.perf_counter() - t) * 1e3
    timings["total"] = (time.perf_counter() - t0) * 1e3
    return InvariantResult(
        out["delta"], out["rho1"], out["theta"], D.writhe, D.total_rotation, D.n, timings
    )


# ------------------------------------------------------- term-by-term route
#
# The functions below evaluate the defining formulas literally on whatever
# ring elements they are given (RationalFunc1, RationalFunc2, Fractions).
# They are slow but independent of the packed-integer route above, which
# makes them the reference for verification and tests.

HALF = Fraction(1, 2)


def r1_term(s, gii, gij, gji, gjj, gj1j, gjj1):
    return s * (gji * (gj1j + gjj1 - gij) - gii * (gjj1 - 1) - HALF)


def f1_term(s, g1, g2, g3, t1s, t2s, t3s):
    """F1 of a crossing; ``gK`` maps a pair of 'i'/'j' letters to entries of G_K.

    ``t1s``, ``t2s``, ``t3s`` are ``T1^s``, ``T2^s``, ``T3^s``.  The last
    bracket is read as
    ``(T3^s-1) g3ji (1 - T2^s g1ii + g2ij + (T2^s-2) g2jj - (T1^s-1)(T2^s+1) g1ji)``.
    """
    first = (
        HALF - g3["ii"] + t2s * g1["ii"] * g2["ji"] - t2s * g3["jj"] * g2["ji"]
        - (t2s - 1) * g3["ii"] * g2["ji"] + (t3s - 1) * g2["ji"] * g3["ji"]
        - g1["ii"] * g2["jj"] + 2 * g3["ii"] * g2["jj"] + g1["ii"] * g3["jj"]
        - g2["ii"] * g3["jj"]
    )
    second = (t1s - 1) * t2s * (
        g3["jj"] * g1["ji"] - g2["jj"] * g1["ji"] + t2s * g1["ji"] * g2["ji"]
    ) + (t3s - 1) * g3["ji"] * (
        1 - t2s * g1["ii"] + g2["ij"] + (t2s - 2) * g2["jj"]
        - (t1s - 1) * (t2s + 1) * g1["ji"]
    )
    return s * first + s * second / (t2s - 1)


def f1_simplified(s, gii, gij, gji, gjj, ts):
    """F1 after ``T1 <- 1``, ``T2 = T3 = T``."""
    return s * HALF * (
        1 + 2 * (ts - 1) * gji * gji + 2 * gji * (1 + gij - 2 * gjj)
        + 2 * gii * (-1 - (ts - 1) * gji + gjj)
    )


def f2_term(s0, s1, g1_j1i0, g3_j0i1, g2_i1i0, g2_j1j0, g2_j1i0, g2_i1j0, t1s0, t2s0, t2s1, t3s1):
    return (
        s1 * (t1s0 - 1) * (t3s1 - 1) * g1_j1i0 * g3_j0i1 / (t2s1 - 1)
        * (t2s0 * g2_i1i0 + g2_j1j0 - t2s0 * g2_j1i0 - g2_i1j0)
    )


def f3_term(phi, g3kk):
    return phi * (g3kk - HALF)


def _entries(G, i, j):
    return {"ii": G(i, i), "ij": G(i, j), "ji": G(j, i), "jj": G(j, j)}


def green_rational(gd: GreenData):
    """``(G1, G2, G3)`` as callables returning RationalFunc2 entries."""
    caches = [{}, {}, {}]
    targets = (Target.T1, Target.T2, Target.T1T2)

    def make(idx):
        def G(a, b):
            c = caches[idx]
            if (a, b) not in c:
                c[a, b] = gd.g(a, b).substitute(targets[idx])
            return c[a, b]
        return G

    return tuple(make(k) for k in range(3))


def rho1_sum(D: UprightDiagram, gd: GreenData) -> RationalFunc1:
    """``sum_c R1(c) - sum_k phi_k (g_kk - 1/2)`` as a rational function."""
    g = gd.g
    total = RationalFunc1(0)
    for c in D.crossings:
        s, i, j = c.sign, c.over, c.under
        total = total + r1_term(s, g(i, i), g(i, j), g(j, i), g(j, j), g(j + 1, j), g(j, j + 1))
    for k, phi in D.rotations:
        total = total - phi * (g(k, k) - HALF)
    return total


def rho1_symbolic(D: UprightDiagram, gd: GreenData | None = None) -> LaurentPoly1:
    """rho1 by rational-function arithmetic, then exact cancellation."""
    if gd is None:
        gd = green(build_matrix(D))
    delta = alexander(D, gd)
    return (rho1_sum(D, gd) * (delta * delta)).to_poly()


def theta_sum(D: UprightDiagram, gd: GreenData, include_diagonal: bool = True):
    """``sum F1 + sum F2 + sum F3`` as a RationalFunc2."""
    G1, G2, G3 = green_rational(gd)
    T1, T2 = LaurentPoly2.T1(), LaurentPoly2.T2()
    T3 = T1 * T2

    def pw(x, s):
        return RationalFunc2(x ** s)

    total = RationalFunc2(0)
    for c in D.crossings:
        s, i, j = c.sign, c.over, c.under
        total = total + f1_term(
            s, _entries(G1, i, j), _entries(G2, i, j), _entries(G3, i, j),
            pw(T1, s), pw(T2, s), pw(T3, s),
        )
    for a, c0 in enumerate(D.crossings):
        for b, c1 in enumerate(D.crossings):
            if a == b and not include_diagonal:
                continue
            s0, i0, j0 = c0.sign, c0.over, c0.under
            s1, i1, j1 = c1.sign, c1.over, c1.under
            total = total + f2_term(
                s0, s1, G1(j1, i0), G3(j0, i1), G2(i1, i0), G2(j1, j0), G2(j1, i0), G2(i1, j0),
                pw(T1, s0), pw(T2, s0),
                pw(T2, s1), pw(T3, s1),
            )
    for k, phi in D.rotations:
        total = total + f3_term(phi, G3(k, k))
    return total


def theta_symbolic(
    D: UprightDiagram, gd: GreenData | None = None, include_diagonal: bool = True
) -> LaurentPoly2:
    """theta by rational-function arithmetic; NotDivisible if it is not Laurent."""
    if gd is None:
        gd = green(build_matrix(D))
    delta = alexander(D, gd)
    d1, d2, d3 = (delta.substitute(t) for t in (Target.T1, Target.T2, Target.T1T2))
    return (theta_sum(D, gd, include_diagonal) * (d1 * d2 * d3)).to_poly()
