"""Numba JIT implementations of the hot enumeration kernels.

Contract shared with the numpy twin (see :mod:`fareychain.kernels`): each
kernel walks leaves in ascending index order inside 2^k prefix blocks and
returns one row of compensated partial sums per block.  Block partials are
the unit of reduction; the caller combines them sequentially, so results are
bit-identical for any worker count.

All integer work is int64; callers guarantee n <= 90 so that every matrix
entry and mediant stays below F_{n+2} < 2^63.
"""

import math

import numpy as np
from numba import njit, prange


@njit(inline="always")
def _kadd(s, c, x):
    # Kahan compensated add: returns updated (sum, compensation)
    y = x - c
    t = s + y
    return t, (t - s) - y


@njit(cache=True, parallel=True)
def partition_partials(n, beta, h, k, shift):
    """Per-block partials over chains starting with A, via the Farey pair walk.

    Each leaf contributes the A-chain term at field +h and its bit-complement
    image (a B-chain, same trace, opposite magnetization) at the same field.
    Columns: 0 sum w_A, 1 sum w_B, 2 sum w*E, 3 sum w*E^2, 4 sum w*Mag,
    5 sum w*Mag^2, 6 sum w over all states except the two h=0 ground states.
    Weights are exp(-beta*E - shift).
    """
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    out = np.zeros((nblocks, 7), dtype=np.float64)
    for blk in prange(nblocks):
        nl0 = 0
        dl0 = 1
        nr0 = 1
        dr0 = 1
        b0 = 0
        for s in range(k):
            if (blk >> (k - 1 - s)) & 1 == 0:
                nr0 = nl0 + nr0
                dr0 = dl0 + dr0
            else:
                nl0 = nl0 + nr0
                dl0 = dl0 + dr0
                b0 += 1
        s0 = 0.0
        c0 = 0.0
        s1 = 0.0
        c1 = 0.0
        s2 = 0.0
        c2 = 0.0
        s3 = 0.0
        c3 = 0.0
        s4 = 0.0
        c4 = 0.0
        s5 = 0.0
        c5 = 0.0
        s6 = 0.0
        c6 = 0.0
        for sub in range(sub_count):
            nl = nl0
            dl = dl0
            nr = nr0
            dr = dr0
            b = b0
            for s in range(sub_bits):
                if (sub >> (sub_bits - 1 - s)) & 1 == 0:
                    nr = nl + nr
                    dr = dl + dr
                else:
                    nl = nl + nr
                    dl = dl + dr
                    b += 1
            logt = math.log(float(dl + nr))
            mag = float(n - 2 * b)
            ea = logt - h * mag
            eb = logt + h * mag
            wa = math.exp(-beta * ea - shift)
            wb = math.exp(-beta * eb - shift)
            s0, c0 = _kadd(s0, c0, wa)
            s1, c1 = _kadd(s1, c1, wb)
            s2, c2 = _kadd(s2, c2, wa * ea)
            s2, c2 = _kadd(s2, c2, wb * eb)
            s3, c3 = _kadd(s3, c3, wa * ea * ea)
            s3, c3 = _kadd(s3, c3, wb * eb * eb)
            s4, c4 = _kadd(s4, c4, wa * mag)
            s4, c4 = _kadd(s4, c4, -wb * mag)
            s5, c5 = _kadd(s5, c5, (wa + wb) * (mag * mag))
            if blk != 0 or sub != 0:
                s6, c6 = _kadd(s6, c6, wa)
                s6, c6 = _kadd(s6, c6, wb)
        out[blk, 0] = s0
        out[blk, 1] = s1
        out[blk, 2] = s2
        out[blk, 3] = s3
        out[blk, 4] = s4
        out[blk, 5] = s5
        out[blk, 6] = s6
    return out


@njit(cache=True, parallel=True)
def direct_partition_partials(n, beta, h, k, shift):
    """Same accumulator layout as partition_partials, from the direct route.

    Walks every configuration c in [0, 2^n) (bit = spin, MSB first) and
    multiplies the 2x2 word out explicitly.  Independent of the Farey pair
    recursion; this is the oracle side of the dual-route check.
    """
    nblocks = 1 << k
    sub_bits = n - k
    sub_count = 1 << sub_bits
    last = (1 << n) - 1
    half = 1 << (n - 1)
    out = np.zeros((nblocks, 7), dtype=np.float64)
    for blk in prange(nblocks):
        s0 = 0.0
        c0 = 0.0
        s1 = 0.0
        c1 = 0.0
        s2 = 0.0
        c2 = 0.0
        s3 = 0.0
        c3 = 0.0
        s4 = 0.0
        c4 = 0.0
        s5 = 0.0
        c5 = 0.0
        s6 = 0.0
        c6 = 0.0
        base = blk * sub_count
        for sub in range(sub_count):
            c = base + sub
            m1 = 1
            m2 = 0
            m3 = 0
            m4 = 1
            b = 0
            for s in range(n):
                if (c >> (n - 1 - s)) & 1 == 0:
                    # right-multiply by A = ((1,0),(1,1))
                    m1 += m2
                    m3 += m4
                else:
                    # right-multiply by B = ((1,1),(0,1))
                    m2 += m1
                    m4 += m3
                    b += 1
            logt = math.log(float(m1 + m4))
            mag = float(n - 2 * b)
            e = logt - h * mag
            w = math.exp(-beta * e - shift)
            if c < half:
                s0, c0 = _kadd(s0, c0, w)
            else:
                s1, c1 = _kadd(s1, c1, w)
            s2, c2 = _kadd(s2, c2, w * e)
            s3, c3 = _kadd(s3, c3, w * e * e)
            s4, c4 = _kadd(s4, c4, w * mag)
            s5, c5 = _kadd(s5, c5, w * mag * mag)
            if c != 0 and c != last:
                s6, c6 = _kadd(s6, c6, w)
        out[blk, 0] = s0
        out[blk, 1] = s1
        out[blk, 2] = s2
        out[blk, 3] = s3
        out[blk, 4] = s4
        out[blk, 5] = s5
        out[blk, 6] = s6
    return out


@njit(cache=True, parallel=True)
def correlation_partials(n, beta, h, k, shift):
    """Per-block sums for <s_1 s_j>: column 0 holds sum w, column j sum w*s1*sj.

    Folds each A-chain leaf with its complement image; the product s1*sj is
    complement-invariant, so both carry the same sign factor.
    """
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    out = np.zeros((nblocks, n + 1), dtype=np.float64)
    for blk in prange(nblocks):
        sums = np.zeros(n + 1, dtype=np.float64)
        comps = np.zeros(n + 1, dtype=np.float64)
        bits = np.empty(nbits, dtype=np.int64)
        for s in range(k):
            bits[s] = (blk >> (k - 1 - s)) & 1
        for sub in range(sub_count):
            for s in range(sub_bits):
                bits[k + s] = (sub >> (sub_bits - 1 - s)) & 1
            nl = 0
            dl = 1
            nr = 1
            dr = 1
            b = 0
            for s in range(nbits):
                if bits[s] == 0:
                    nr = nl + nr
                    dr = dl + dr
                else:
                    nl = nl + nr
                    dl = dl + dr
                    b += 1
            logt = math.log(float(dl + nr))
            mag = float(n - 2 * b)
            w = math.exp(-beta * (logt - h * mag) - shift) + math.exp(
                -beta * (logt + h * mag) - shift
            )
            y = w - comps[0]
            t = sums[0] + y
            comps[0] = (t - sums[0]) - y
            sums[0] = t
            # j = 1: s1*s1 = 1 for every state
            y = w - comps[1]
            t = sums[1] + y
            comps[1] = (t - sums[1]) - y
            sums[1] = t
            for j in range(2, n + 1):
                # s1 = -1 (chain starts with A), sj = 2*sigma_j - 1, so
                # s1*sj = +1 when sigma_j = 0 and -1 when sigma_j = 1
                v = w if bits[j - 2] == 0 else -w
                y = v - comps[j]
                t = sums[j] + y
                comps[j] = (t - sums[j]) - y
                sums[j] = t
        for j in range(n + 1):
            out[blk, j] = sums[j]
    return out


@njit(cache=True, parallel=True)
def chain_spectrum(n, k):
    """Traces and B-counts of all 2^(n-1) chains starting with A, leaf order."""
    nbits = n - 1
    nblocks = 1 << k
    sub_bits = nbits - k
    sub_count = 1 << sub_bits
    traces = np.empty(1 << nbits, dtype=np.int64)
    bcounts = np.empty(1 << nbits, dtype=np.int64)
    for blk in prange(nblocks):
        nl0 = 0
        dl0 = 1
        nr0 = 1
        dr0 = 1
        b0 = 0
        for s in range(k):
            if (blk >> (k - 1 - s)) & 1 == 0:
                nr0 = nl0 + nr0
                dr0 = dl0 + dr0
            else:
                nl0 = nl0 + nr0
                dl0 = dl0 + dr0
                b0 += 1
        base = blk * sub_count
        for sub in range(sub_count):
            nl = nl0
            dl = dl0
            nr = nr0
            dr = dr0
            b = b0
            for s in range(sub_bits):
                if (sub >> (sub_bits - 1 - s)) & 1 == 0:
                    nr = nl + nr
                    dr = dl + dr
                else:
                    nl = nl + nr
                    dl = dl + dr
                    b += 1
            traces[base + sub] = dl + nr
            bcounts[base + sub] = b
    return traces, bcounts


@njit(cache=True, parallel=True)
def direct_spectrum(n, k):
    """Traces and B-counts of all 2^n words, config order, by matrix products."""
    nblocks = 1 << k
    sub_bits = n - k
    sub_count = 1 << sub_bits
    traces = np.empty(1 << n, dtype=np.int64)
    bcounts = np.empty(1 << n, dtype=np.int64)
    for blk in prange(nblocks):
        base = blk * sub_count
        for sub in range(sub_count):
            c = base + sub
            m1 = 1
            m2 = 0
            m3 = 0
            m4 = 1
            b = 0
            for s in range(n):
                if (c >> (n - 1 - s)) & 1 == 0:
                    m1 += m2
                    m3 += m4
                else:
                    m2 += m1
                    m4 += m3
                    b += 1
            traces[c] = m1 + m4
            bcounts[c] = b
    return traces, bcounts
