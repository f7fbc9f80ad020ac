"""Hot inner loops, compiled with numba by default.

Setting ``FFRESTRICT_PURE_NUMPY=1`` in the environment (or running without
numba installed) selects pure-numpy fallbacks.  Both paths compute identical
results; tests compare them and ``benchmarks/bench_kernels.py`` times them.
Dispatch happens at call time through the module flag ``NUMBA_OK`` so the
benchmark can flip paths inside one process.
"""

from __future__ import annotations

import os

import numpy as np

PURE_NUMPY = os.environ.get("FFRESTRICT_PURE_NUMPY", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    if PURE_NUMPY:
        raise ImportError("numba disabled by FFRESTRICT_PURE_NUMPY")
    from numba import njit

    NUMBA_OK = True
except ImportError:
    NUMBA_OK = False


def powers_of(p: int, n: int) -> np.ndarray:
    """[p^(n-1), ..., p, 1]: weights packing digit vectors in lexicographic order."""
    return p ** np.arange(n - 1, -1, -1, dtype=np.int64)


def pack_points(points: np.ndarray, p: int) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    return points @ powers_of(p, points.shape[-1])


def unpack_indices(idx: np.ndarray, p: int, n: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (n,), dtype=np.int64)
    rem = idx
    for j, q in enumerate(powers_of(p, n)):
        out[..., j] = rem // q
        rem = rem % q
    return out


# ---------------------------------------------------------------------------
# pure-numpy implementations


def _dft_apply_np(mat: np.ndarray, w: np.ndarray) -> np.ndarray:
    return mat @ w.T


def _cyclic_convolve_np(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(b.shape, dtype=np.complex128)
    axes = tuple(range(b.ndim))
    for pos in np.argwhere(a != 0):
        shift = tuple(int(v) for v in pos)
        out += a[shift] * np.roll(b, shift=shift, axis=axes)
    return out


def _pair_sum_counts_np(points: np.ndarray, p: int, size: int, pows: np.ndarray) -> np.ndarray:
    n, d = points.shape
    counts = np.zeros(size, dtype=np.int64)
    block = max(1, 4_000_000 // max(n, 1))
    for lo in range(0, n, block):
        sums = (points[lo : lo + block, None, :] + points[None, :, :]) % p
        counts += np.bincount(sums.reshape(-1, d) @ pows, minlength=size)
    return counts


def _quadruple_count_np(points: np.ndarray, p: int) -> int:
    # Same quadruple count as the nested loop, written as a membership scan of
    # x + y - z over all ordered triples.
    n, d = points.shape
    pows = powers_of(p, d)
    member = np.zeros(p**d, dtype=bool)
    member[points @ pows] = True
    sums = (points[:, None, :] + points[None, :, :]).reshape(-1, d)
    total = 0
    for z in points:
        total += int(member[((sums - z) % p) @ pows].sum())
    return total


def _m1_m2_counts_np(under: np.ndarray, p: int, pows_m: np.ndarray) -> tuple[int, int]:
    n, m = under.shape
    sizew = p**m
    cnt_iso = np.zeros(sizew * p, dtype=np.int64)
    cnt_ani = np.zeros(sizew * p, dtype=np.int64)
    for zi in range(n):
        w = (under - under[zi]) % p
        c = (w @ under[zi]) % p
        ww = np.einsum("ij,ij->i", w, w) % p
        keys = (w @ pows_m) * p + c
        iso = ww == 0
        cnt_iso += np.bincount(keys[iso], minlength=sizew * p)
        cnt_ani += np.bincount(keys[~iso], minlength=sizew * p)
    occupied = np.nonzero((cnt_iso + cnt_ani).reshape(sizew, p).any(axis=1))[0]
    m1 = 0
    m2 = 0
    for wpack in occupied:
        wd = unpack_indices(np.int64(wpack), p, m)
        hist = np.bincount((under @ wd) % p, minlength=p)
        lo, hi = wpack * p, (wpack + 1) * p
        m1 += int(cnt_iso[lo:hi] @ hist)
        m2 += int(cnt_ani[lo:hi] @ hist)
    return m1, m2


def _incidence_direct_np(a_pts: np.ndarray, b_pts: np.ndarray, p: int) -> int:
    total = 0
    block = max(1, 2_000_000 // max(b_pts.shape[0], 1))
    for lo in range(0, a_pts.shape[0], block):
        diff = (a_pts[lo : lo + block, None, :] - b_pts[None, :, :]) % p
        under = diff[..., :-1]
        qs = np.einsum("abj,abj->ab", under, under) % p
        total += int((qs == diff[..., -1]).sum())
    return total


# ---------------------------------------------------------------------------
# numba implementations

if NUMBA_OK:

    @njit(cache=True)
    def _dft_apply_nb(mat, w):  # pragma: no cover - exercised via dispatch
        m, p = mat.shape
        out = np.empty((m, p), dtype=np.complex128)
        for a in range(m):
            for i in range(p):
                acc = 0.0 + 0.0j
                for j in range(p):
                    acc += w[i, j] * mat[a, j]
                out[a, i] = acc
        return out

    @njit(cache=True)
    def _cyclic_convolve_nb(vals, shifts, b_flat, p, pows):  # pragma: no cover
        n = b_flat.size
        d = pows.size
        out = np.zeros(n, dtype=np.complex128)
        xdig = np.zeros(d, dtype=np.int64)
        for x in range(n):
            for k in range(vals.size):
                idx = 0
                for j in range(d):
                    c = xdig[j] + shifts[k, j]
                    if c >= p:
                        c -= p
                    idx += c * pows[j]
                out[idx] += vals[k] * b_flat[x]
            j = d - 1
            while j >= 0:
                xdig[j] += 1
                if xdig[j] == p:
                    xdig[j] = 0
                    j -= 1
                else:
                    break
        return out

    @njit(cache=True)
    def _pair_sum_counts_nb(points, p, size, pows):  # pragma: no cover
        n, d = points.shape
        counts = np.zeros(size, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                key = 0
                for k in range(d):
                    c = points[i, k] + points[j, k]
                    if c >= p:
                        c -= p
                    key += c * pows[k]
                counts[key] += 1
        return counts

    @njit(cache=True)
    def _quadruple_count_nb(points, p):  # pragma: no cover
        n, d = points.shape
        total = 0
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for e in range(n):
                        ok = True
                        for k in range(d):
                            s1 = points[a, k] + points[b, k]
                            if s1 >= p:
                                s1 -= p
                            s2 = points[c, k] + points[e, k]
                            if s2 >= p:
                                s2 -= p
                            if s1 != s2:
                                ok = False
                                break
                        if ok:
                            total += 1
        return total

    @njit(cache=True)
    def _m1_m2_counts_nb(under, p, pows_m):  # pragma: no cover
        n, m = under.shape
        sizew = 1
        for _ in range(m):
            sizew *= p
        cnt_iso = np.zeros(sizew * p, dtype=np.int64)
        cnt_ani = np.zeros(sizew * p, dtype=np.int64)
        for zi in range(n):
            for yi in range(n):
                wpack = 0
                c = 0
                ww = 0
                for j in range(m):
                    w = under[yi, j] - under[zi, j]
                    if w < 0:
                        w += p
                    wpack += w * pows_m[j]
                    c += w * under[zi, j]
                    ww += w * w
                c %= p
                if ww % p == 0:
                    cnt_iso[wpack * p + c] += 1
                else:
                    cnt_ani[wpack * p + c] += 1
        m1 = 0
        m2 = 0
        wdig = np.zeros(m, dtype=np.int64)
        hist = np.zeros(p, dtype=np.int64)
        for wpack in range(sizew):
            base = wpack * p
            occupied = False
            for c in range(p):
                if cnt_iso[base + c] != 0 or cnt_ani[base + c] != 0:
                    occupied = True
                    break
            if not occupied:
                continue
            rem = wpack
            for j in range(m):
                wdig[j] = rem // pows_m[j]
                rem -= wdig[j] * pows_m[j]
            for c in range(p):
                hist[c] = 0
            for xi in range(n):
                dot = 0
                for j in range(m):
                    dot += under[xi, j] * wdig[j]
                hist[dot % p] += 1
            for c in range(p):
                m1 += cnt_iso[base + c] * hist[c]
                m2 += cnt_ani[base + c] * hist[c]
        return m1, m2

    @njit(cache=True)
    def _incidence_direct_nb(a_pts, b_pts, p):  # pragma: no cover
        na, d = a_pts.shape
        nb = b_pts.shape[0]
        total = 0
        for i in range(na):
            for j in range(nb):
                q = 0
                for k in range(d - 1):
                    c = a_pts[i, k] - b_pts[j, k]
                    if c < 0:
                        c += p
                    q += c * c
                c = a_pts[i, d - 1] - b_pts[j, d - 1]
                if c < 0:
                    c += p
                if q % p == c:
                    total += 1
        return total


# ---------------------------------------------------------------------------
# call-time dispatch


def dft_apply(mat: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Row-wise length-p transform: out[a, i] = sum_j w[i, j] * mat[a, j]."""
    mat = np.ascontiguousarray(mat, dtype=np.complex128)
    if NUMBA_OK:
        return _dft_apply_nb(mat, np.ascontiguousarray(w))
    return _dft_apply_np(mat, w)


def cyclic_convolve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Convolution over (Z/p)^d with counting measure; shifts over the sparser side."""
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    if NUMBA_OK:
        nz = np.argwhere(a != 0)
        vals = np.ascontiguousarray(a[tuple(nz.T)], dtype=np.complex128)
        shifts = np.ascontiguousarray(nz, dtype=np.int64)
        pows = powers_of(p, b.ndim)
        flat = _cyclic_convolve_nb(
            vals, shifts, np.ascontiguousarray(b.reshape(-1), dtype=np.complex128), p, pows
        )
        return flat.reshape(b.shape)
    return _cyclic_convolve_np(a, b, p)


def pair_sum_counts(points: np.ndarray, p: int) -> np.ndarray:
    """Counts of ordered pair sums (a+b mod p) over all packed targets in F^d."""
    points = np.ascontiguousarray(points, dtype=np.int64)
    d = points.shape[1]
    size = p**d
    pows = powers_of(p, d)
    if NUMBA_OK:
        return _pair_sum_counts_nb(points, p, size, pows)
    return _pair_sum_counts_np(points, p, size, pows)


def quadruple_count(points: np.ndarray, p: int) -> int:
    points = np.ascontiguousarray(points, dtype=np.int64)
    if NUMBA_OK:
        return int(_quadruple_count_nb(points, p))
    return _quadruple_count_np(points, p)


def m1_m2_counts(under: np.ndarray, p: int) -> tuple[int, int]:
    """Triple counts split by whether the difference of projections is isotropic."""
    under = np.ascontiguousarray(under, dtype=np.int64)
    pows_m = powers_of(p, under.shape[1])
    if NUMBA_OK:
        m1, m2 = _m1_m2_counts_nb(under, p, pows_m)
        return int(m1), int(m2)
    return _m1_m2_counts_np(under, p, pows_m)


def incidence_direct(a_pts: np.ndarray, b_pts: np.ndarray, p: int) -> int:
    a_pts = np.ascontiguousarray(a_pts, dtype=np.int64)
    b_pts = np.ascontiguousarray(b_pts, dtype=np.int64)
    if NUMBA_OK:
        return int(_incidence_direct_nb(a_pts, b_pts, p))
    return _incidence_direct_np(a_pts, b_pts, p)
