"""Compiled kernels for the double description method and modular rank tests.

Tight sets are stored as rows of uint64 words (bit k = inequality k is tight).
"""

import numba as nb
import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@nb.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@nb.njit(cache=True)
def ray_bitmaps(T, nrows):
    """Transpose tight sets: bit r of row k is set when ray r is tight at inequality k."""
    m, W = T.shape
    MW = (m + 63) // 64
    F = np.zeros((nrows, MW), dtype=np.uint64)
    counts = np.zeros(nrows, dtype=np.int64)
    for r in range(m):
        for k in range(nrows):
            if (T[r, k // 64] >> np.uint64(k % 64)) & np.uint64(1):
                F[k, r // 64] |= np.uint64(1) << np.uint64(r % 64)
                counts[k] += 1
    return F, counts


@nb.njit(cache=True)
def adjacent_pairs(T, pos, neg, need, F, facet_order, stop_at):
    """Pairs (p, q) of pos x neg rays that are adjacent in the current cone.

    Combinatorial test: the common tight set Z must have at least ``need``
    members and no third ray may be tight on all of Z.  Rays tight on Z are
    found by AND-ing the ray bitmaps of the rarest inequalities in Z until at
    most ``stop_at`` candidates remain, then checked directly.
    """
    m, W = T.shape
    MW = F.shape[1]
    nrows = facet_order.shape[0]
    out_p = []
    out_q = []
    z = np.empty(W, dtype=np.uint64)
    buf = np.empty(MW, dtype=np.uint64)
    for a in range(pos.shape[0]):
        p = pos[a]
        for b in range(neg.shape[0]):
            q = neg[b]
            c = 0
            for w in range(W):
                z[w] = T[p, w] & T[q, w]
                c += _popcount(z[w])
            if c < need:
                continue
            first = True
            left = m
            for t in range(nrows):
                k = facet_order[t]
                if not (z[k // 64] >> np.uint64(k % 64)) & np.uint64(1):
                    continue
                left = 0
                if first:
                    for w in range(MW):
                        buf[w] = F[k, w]
                        left += _popcount(buf[w])
                    first = False
                else:
                    for w in range(MW):
                        buf[w] &= F[k, w]
                        left += _popcount(buf[w])
                if left <= stop_at:
                    break
            ok = True
            for w in range(MW):
                word = buf[w]
                while word:
                    low = word & (~word + np.uint64(1))
                    r = w * 64 + _popcount(low - np.uint64(1))
                    word ^= low
                    if r == p or r == q:
                        continue
                    sup = True
                    for v in range(W):
                        if (T[r, v] & z[v]) != z[v]:
                            sup = False
                            break
                    if sup:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out_p.append(p)
                out_q.append(q)
    return np.array(out_p, dtype=np.int64), np.array(out_q, dtype=np.int64)


@nb.njit(cache=True)
def _rank_mod(M, prime):
    A = M.copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if A[i, c] % prime != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                A[r, j], A[piv, j] = A[piv, j], A[r, j]
        inv = 1
        base = A[r, c] % prime
        e = prime - 2
        while e:
            if e & 1:
                inv = inv * base % prime
            base = base * base % prime
            e >>= 1
        for j in range(cols):
            A[r, j] = A[r, j] * inv % prime
        for i in range(rows):
            if i != r and A[i, c] % prime != 0:
                fac = A[i, c] % prime
                for j in range(cols):
                    A[i, j] = (A[i, j] - fac * A[r, j]) % prime
        r += 1
        if r == rows:
            break
    return r


@nb.njit(cache=True)
def tight_ranks_mod(A, tight, prime):
    """Rank mod ``prime`` of the tight rows of A, one per ray.

    ``tight`` is a boolean matrix (rays x rows).  Modular rank never exceeds the
    rational rank, so a full modular rank certifies a full rational rank.
    """
    out = np.empty(tight.shape[0], dtype=np.int64)
    for r in range(tight.shape[0]):
        idx = np.nonzero(tight[r])[0]
        sub = np.empty((idx.shape[0], A.shape[1]), dtype=np.int64)
        for t in range(idx.shape[0]):
            for j in range(A.shape[1]):
                sub[t, j] = A[idx[t], j] % prime
        out[r] = _rank_mod(sub, prime)
    return out
