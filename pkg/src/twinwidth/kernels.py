"""Bitset kernels shared by the trigraph replay and the exact solver.

Adjacency is held as two ``uint64`` matrices ``black`` and ``red`` of shape
``(capacity, words)``; bit ``v`` of row ``u`` marks the edge ``uv``. Every
kernel exists twice: a loop version compiled with numba and a vectorised
numpy version. The public names bind to one of them according to
:data:`twinwidth._accel.USE_NUMBA`; both stay importable for testing and
benchmarking.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

WORD = 64

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


def n_words(n):
    return max(1, (n + WORD - 1) // WORD)


def bits_to_indices(row):
    """Indices of the set bits of one bitset row, ascending."""
    return np.flatnonzero(np.unpackbits(np.ascontiguousarray(row).view(np.uint8), bitorder="little"))


# ---------------------------------------------------------------------------
# numba path


@njit
def _popcount64(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit
def _row_popcount(rows, u):
    c = 0
    for w in range(rows.shape[1]):
        c += _popcount64(rows[u, w])
    return c


@njit
def row_popcounts_numba(rows):
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for u in range(rows.shape[0]):
        out[u] = _row_popcount(rows, u)
    return out


@njit
def contract_rows_numba(black, red, red_deg, keep, remove):
    W = black.shape[1]
    kw = keep >> 6
    rw = remove >> 6
    kb = _ONE << np.uint64(keep & 63)
    rb = _ONE << np.uint64(remove & 63)
    union = np.empty(W, dtype=np.uint64)
    newblack = np.empty(W, dtype=np.uint64)
    for w in range(W):
        u = black[keep, w] | red[keep, w] | black[remove, w] | red[remove, w]
        b = black[keep, w] & black[remove, w]
        if w == kw:
            u &= ~kb
            b &= ~kb
        if w == rw:
            u &= ~rb
            b &= ~rb
        union[w] = u
        newblack[w] = b
    for w in range(W):
        word = union[w]
        while word != 0:
            low = word & (~word + _ONE)
            word ^= low
            u = w * 64 + _popcount64(low - _ONE)
            black[u, kw] &= ~kb
            red[u, kw] &= ~kb
            black[u, rw] &= ~rb
            red[u, rw] &= ~rb
            if newblack[w] & low:
                black[u, kw] |= kb
            else:
                red[u, kw] |= kb
            red_deg[u] = _row_popcount(red, u)
    for w in range(W):
        black[remove, w] = 0
        red[remove, w] = 0
        black[keep, w] = newblack[w]
        red[keep, w] = union[w] & ~newblack[w]
    red_deg[remove] = 0
    red_deg[keep] = _row_popcount(red, keep)


@njit
def pair_scores_numba(black, red, red_deg, idx):
    """Max red degree of the trigraph after contracting each pair of ``idx``.

    Pairs are enumerated as ``(idx[a], idx[b])`` for ``a < b`` in row-major
    order.
    """
    m = idx.shape[0]
    W = black.shape[1]
    out = np.empty(m * (m - 1) // 2, dtype=np.int64)
    union = np.empty(W, dtype=np.uint64)
    newred = np.empty(W, dtype=np.uint64)
    p = 0
    for a in range(m):
        i = idx[a]
        iw = i >> 6
        ib = _ONE << np.uint64(i & 63)
        for b in range(a + 1, m):
            j = idx[b]
            jw = j >> 6
            jb = _ONE << np.uint64(j & 63)
            merged = 0
            for w in range(W):
                u = black[i, w] | red[i, w] | black[j, w] | red[j, w]
                bl = black[i, w] & black[j, w]
                if w == iw:
                    u &= ~ib
                if w == jw:
                    u &= ~jb
                union[w] = u
                newred[w] = u & ~bl
                merged += _popcount64(newred[w])
            best = merged
            for c in range(m):
                v = idx[c]
                if v == i or v == j:
                    continue
                r = red_deg[v]
                vw = v >> 6
                vb = _ONE << np.uint64(v & 63)
                if union[vw] & vb:
                    if red[i, vw] & vb:
                        r -= 1
                    if red[j, vw] & vb:
                        r -= 1
                    if newred[vw] & vb:
                        r += 1
                if r > best:
                    best = r
            out[p] = best
            p += 1
    return out


# ---------------------------------------------------------------------------
# numpy path


def row_popcounts_numpy(rows):
    return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


def _bit(v):
    return v >> 6, _ONE << np.uint64(v & 63)


def contract_rows_numpy(black, red, red_deg, keep, remove):
    kw, kb = _bit(keep)
    rw, rb = _bit(remove)
    union = black[keep] | red[keep] | black[remove] | red[remove]
    newblack = black[keep] & black[remove]
    union[kw] &= ~kb
    union[rw] &= ~rb
    newblack[kw] &= ~kb
    newblack[rw] &= ~rb
    nbrs = bits_to_indices(union)
    if nbrs.size:
        black[nbrs, kw] &= ~kb
        red[nbrs, kw] &= ~kb
        black[nbrs, rw] &= ~rb
        red[nbrs, rw] &= ~rb
        is_black = (newblack[nbrs >> 6] >> (nbrs & 63).astype(np.uint64)) & _ONE
        is_black = is_black.astype(bool)
        black[nbrs[is_black], kw] |= kb
        red[nbrs[~is_black], kw] |= kb
        red_deg[nbrs] = row_popcounts_numpy(red[nbrs])
    black[remove] = 0
    red[remove] = 0
    black[keep] = newblack
    red[keep] = union & ~newblack
    red_deg[remove] = 0
    red_deg[keep] = int(np.bitwise_count(red[keep]).sum())


def _unpack(rows, n):
    return np.unpackbits(np.ascontiguousarray(rows).view(np.uint8), axis=-1, bitorder="little")[..., :n]


def pair_scores_numpy(black, red, red_deg, idx):
    idx = np.asarray(idx, dtype=np.int64)
    m = idx.size
    if m < 2:
        return np.empty(0, dtype=np.int64)
    n = black.shape[0]
    a, b = np.triu_indices(m, k=1)
    I, J = idx[a], idx[b]
    union = black[I] | red[I] | black[J] | red[J]
    newblack = black[I] & black[J]
    rows = np.arange(I.size)
    union[rows, I >> 6] &= ~(_ONE << (I & 63).astype(np.uint64))
    union[rows, J >> 6] &= ~(_ONE << (J & 63).astype(np.uint64))
    newred = union & ~newblack
    merged = np.bitwise_count(newred).sum(axis=1, dtype=np.int64)
    deg = np.broadcast_to(red_deg[:n].astype(np.int64), (I.size, n)).copy()
    deg -= _unpack(red[I], n)
    deg -= _unpack(red[J], n)
    deg += _unpack(newred, n)
    # red[I] already covers every red neighbour of I; only the pair itself is masked
    deg[rows, I] = -1
    deg[rows, J] = -1
    alive = np.zeros(n, dtype=bool)
    alive[idx] = True
    deg[:, ~alive] = -1
    return np.maximum(merged, deg.max(axis=1))


if USE_NUMBA:
    row_popcounts = row_popcounts_numba
    contract_rows = contract_rows_numba
    pair_scores = pair_scores_numba
else:
    row_popcounts = row_popcounts_numpy
    contract_rows = contract_rows_numpy
    pair_scores = pair_scores_numpy
