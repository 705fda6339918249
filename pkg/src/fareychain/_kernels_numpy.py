"""Pure-numpy implementations of the enumeration kernels.

Vectorized twin of :mod:`fareychain._kernels_numba` with the identical block
grid and accumulator layout.  Inside a block the leaf axis is processed in
fixed 65536-wide chunks (chunk sums via numpy's pairwise reduction, chunks
folded with Kahan), so the reduction order never depends on memory pressure
or worker count.  Float values may differ from the numba backend at the few-
ulp level; each backend is individually byte-reproducible.
"""

import numpy as np

CHUNK = 1 << 16


def _kahan_fold(sums, comps, vals):
    y = vals - comps
    t = sums + y
    comps[:] = (t - sums) - y
    sums[:] = t


def _prefix_pair(blk, k):
    # walk the k prefix letters with exact Python ints
    nl, dl, nr, dr, b = 0, 1, 1, 1, 0
    for s in range(k):
        if (blk >> (k - 1 - s)) & 1 == 0:
            nr, dr = nl + nr, dl + dr
        else:
            nl, dl, b = nl + nr, dl + dr, b + 1
    return nl, dl, nr, dr, b


def _walk_pairs(idx, bits, start):
    """Vectorized Farey pair walk over the 'bits' least significant bits of idx."""
    nl0, dl0, nr0, dr0, b0 = start
    nl = np.full(idx.shape, nl0, dtype=np.int64)
    dl = np.full(idx.shape, dl0, dtype=np.int64)
    nr = np.full(idx.shape, nr0, dtype=np.int64)
    dr = np.full(idx.shape, dr0, dtype=np.int64)
    b = np.full(idx.shape, b0, dtype=np.int64)
    for s in range(bits):
        bit = (idx >> (bits - 1 - s)) & 1
        is_b = bit == 1
        med_n = nl + nr
        med_d = dl + dr
        nl = np.where(is_b, med_n, nl)
        dl = np.where(is_b, med_d, dl)
        nr = np.where(is_b, nr, med_n)
        dr = np.where(is_b, dr, med_d)
        b += bit
    return nl, dl, nr, dr, b


def _walk_words(idx, bits, start):
    """Vectorized word product over the 'bits' least significant bits of idx."""
    m10, m20, m30, m40, b0 = start
    m1 = np.full(idx.shape, m10, dtype=np.int64)
    m2 = np.full(idx.shape, m20, dtype=np.int64)
    m3 = np.full(idx.shape, m30, dtype=np.int64)
    m4 = np.full(idx.shape, m40, dtype=np.int64)
    b = np.full(idx.shape, b0, dtype=np.int64)
    for s in range(bits):
        bit = (idx >> (bits - 1 - s)) & 1
        is_a = bit == 0
        s12 = m1 + m2
        s34 = m3 + m4
        m1 = np.where(is_a, s12, m1)
        m2 = np.where(is_a, m2, s12)
        m3 = np.where(is_a, s34, m3)
        m4 = np.where(is_a, m4, s34)
        b += bit
    return m1, m2, m3, m4, b


def _prefix_word(blk, k):
    m1, m2, m3, m4, b = 1, 0, 0, 1, 0
    for s in range(k):
        if (blk >> (k - 1 - s)) & 1 == 0:
            m1, m3 = m1 + m2, m3 + m4
        else:
            m2, m4, b = m1 + m2, m3 + m4, b + 1
    return m1, m2, m3, m4, b


def partition_partials(n, beta, h, k, shift):
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    out = np.zeros((nblocks, 7), dtype=np.float64)
    for blk in range(nblocks):
        start = _prefix_pair(blk, k)
        sums = np.zeros(7)
        comps = np.zeros(7)
        for lo in range(0, sub_count, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, sub_count), dtype=np.int64)
            nl, dl, nr, dr, b = _walk_pairs(idx, sub_bits, start)
            logt = np.log((dl + nr).astype(np.float64))
            mag = (n - 2 * b).astype(np.float64)
            ea = logt - h * mag
            eb = logt + h * mag
            wa = np.exp(-beta * ea - shift)
            wb = np.exp(-beta * eb - shift)
            wtot = wa + wb
            vals = np.empty(7)
            vals[0] = wa.sum()
            vals[1] = wb.sum()
            vals[2] = (wa * ea).sum() + (wb * eb).sum()
            vals[3] = (wa * ea * ea).sum() + (wb * eb * eb).sum()
            vals[4] = (wa * mag).sum() - (wb * mag).sum()
            vals[5] = (wtot * mag * mag).sum()
            if blk == 0 and lo == 0:
                # leaf 0 is the all-A chain; its complement image is all-B:
                # both h=0 ground states live in this one slot
                vals[6] = wtot[1:].sum()
            else:
                vals[6] = wtot.sum()
            _kahan_fold(sums, comps, vals)
        out[blk] = sums
    return out


def direct_partition_partials(n, beta, h, k, shift):
    nblocks = 1 << k
    sub_bits = n - k
    sub_count = 1 << sub_bits
    last = (1 << n) - 1
    half = 1 << (n - 1)
    out = np.zeros((nblocks, 7), dtype=np.float64)
    for blk in range(nblocks):
        start = _prefix_word(blk, k)
        base = blk * sub_count
        sums = np.zeros(7)
        comps = np.zeros(7)
        for lo in range(0, sub_count, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, sub_count), dtype=np.int64)
            m1, m2, m3, m4, b = _walk_words(idx, sub_bits, start)
            conf = base + idx
            logt = np.log((m1 + m4).astype(np.float64))
            mag = (n - 2 * b).astype(np.float64)
            e = logt - h * mag
            w = np.exp(-beta * e - shift)
            a_side = conf < half
            vals = np.empty(7)
            vals[0] = w[a_side].sum()
            vals[1] = w[~a_side].sum()
            vals[2] = (w * e).sum()
            vals[3] = (w * e * e).sum()
            vals[4] = (w * mag).sum()
            vals[5] = (w * mag * mag).sum()
            excited = (conf != 0) & (conf != last)
            vals[6] = w[excited].sum()
            _kahan_fold(sums, comps, vals)
        out[blk] = sums
    return out


def correlation_partials(n, beta, h, k, shift):
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    out = np.zeros((nblocks, n + 1), dtype=np.float64)
    for blk in range(nblocks):
        start = _prefix_pair(blk, k)
        prefix_bits = [(blk >> (k - 1 - s)) & 1 for s in range(k)]
        sums = np.zeros(n + 1)
        comps = np.zeros(n + 1)
        for lo in range(0, sub_count, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, sub_count), dtype=np.int64)
            nl, dl, nr, dr, b = _walk_pairs(idx, sub_bits, start)
            logt = np.log((dl + nr).astype(np.float64))
            mag = (n - 2 * b).astype(np.float64)
            w = np.exp(-beta * (logt - h * mag) - shift) + np.exp(
                -beta * (logt + h * mag) - shift
            )
            vals = np.empty(n + 1)
            wsum = w.sum()
            vals[0] = wsum
            vals[1] = wsum  # s1*s1 = 1
            for j in range(2, n + 1):
                s = j - 2  # appended-letter index
                if s < k:
                    vals[j] = wsum if prefix_bits[s] == 0 else -wsum
                else:
                    bit = (idx >> (sub_bits - 1 - (s - k))) & 1
                    signed = np.where(bit == 0, w, -w)
                    vals[j] = signed.sum()
            _kahan_fold(sums, comps, vals)
        out[blk] = sums
    return out


def chain_spectrum(n, k):
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    traces = np.empty(1 << nbits, dtype=np.int64)
    bcounts = np.empty(1 << nbits, dtype=np.int64)
    for blk in range(nblocks):
        start = _prefix_pair(blk, k)
        base = blk * sub_count
        for lo in range(0, sub_count, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, sub_count), dtype=np.int64)
            nl, dl, nr, dr, b = _walk_pairs(idx, sub_bits, start)
            traces[base + lo : base + lo + idx.shape[0]] = dl + nr
            bcounts[base + lo : base + lo + idx.shape[0]] = b
    return traces, bcounts


def direct_spectrum(n, k):
    nblocks = 1 << k
    sub_bits = n - k
    sub_count = 1 << sub_bits
    traces = np.empty(1 << n, dtype=np.int64)
    bcounts = np.empty(1 << n, dtype=np.int64)
    for blk in range(nblocks):
        start = _prefix_word(blk, k)
        base = blk * sub_count
        for lo in range(0, sub_count, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, sub_count), dtype=np.int64)
            m1, m2, m3, m4, b = _walk_words(idx, sub_bits, start)
            traces[base + lo : base + lo + idx.shape[0]] = m1 + m4
            bcounts[base + lo : base + lo + idx.shape[0]] = b
    return traces, bcounts
