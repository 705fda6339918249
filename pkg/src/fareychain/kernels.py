"""Hot enumeration kernels: block grid, dispatch and deterministic reduction.

The 2^N state space is split by fixed-length bit prefixes into 2^k
independent subtrees.  k is a function of problem size alone (never of the
worker count), each block produces one row of partial sums, and rows are
combined with compensated summation in ascending block order -- so results
are bit-identical no matter how many threads computed the blocks.

Integer work inside kernels is int64.  Word entries and mediants of chains
of length n are bounded by the Fibonacci number F_{n+2}, and F_92 < 2^63,
so the kernels are exact for n <= 90; beyond that they refuse.  (The
enumeration cap in :mod:`fareychain.chain` bites far earlier anyway.)
"""

import math

import numpy as np

from . import backend
from .errors import ExactIntegerOverflowError

LN2 = math.log(2.0)

# Exactness guard for the int64 kernels: F_{n+2} < 2^63 for n <= 90.
MAX_KERNEL_N = 90

# Accumulator columns produced by the partition kernels.
COL_WA, COL_WB, COL_WE, COL_WE2, COL_WMAG, COL_WMAG2, COL_WEXC = range(7)

_impl_cache = {}


def _impl():
    name = backend.active_backend()
    mod = _impl_cache.get(name)
    if mod is None:
        if name == "numba":
            from . import _kernels_numba as mod
        else:
            from . import _kernels_numpy as mod
        _impl_cache[name] = mod
    return mod


def check_kernel_capacity(n):
    if n < 1:
        raise ValueError("chain length must be >= 1")
    if n > MAX_KERNEL_N:
        raise ExactIntegerOverflowError(
            f"chain length {n} exceeds the int64-exact kernel range (n <= {MAX_KERNEL_N})"
        )


def split_bits(nbits):
    """Prefix length k of the block grid; fixed by problem size only."""
    return min(max(nbits - 13, 0), 10)


def energy_shift(n, beta, h):
    """Log-sum-exp shift: -beta*(ln 2 - |h|n) bounds every -beta*E from above.

    ln 2 - |h|n is the exact minimum configuration energy (the field-aligned
    ground state), so shifted weights never exceed one.
    """
    return beta * (abs(h) * n - LN2)


def combine_blocks(partials):
    """Kahan-sum each column over blocks in ascending index order."""
    ncols = partials.shape[1]
    out = np.empty(ncols)
    for col in range(ncols):
        s = 0.0
        c = 0.0
        for v in partials[:, col]:
            y = v - c
            t = s + y
            c = (t - s) - y
            s = t
        out[col] = s
    return out


def partition_sums(n, beta, h, route="chain"):
    """Combined partition accumulators; returns (shift, sums[7]).

    route="chain" enumerates the 2^(n-1) A-chains via the Farey pair
    recursion and folds in their complement images; route="direct" walks all
    2^n word products.  Both cover the full ensemble and share the column
    layout (see COL_*); they are algorithmically independent.
    """
    check_kernel_capacity(n)
    shift = energy_shift(n, beta, h)
    impl = _impl()
    if route == "chain":
        k = split_bits(n - 1)
        partials = impl.partition_partials(n, float(beta), float(h), k, shift)
    elif route == "direct":
        k = split_bits(n)
        partials = impl.direct_partition_partials(n, float(beta), float(h), k, shift)
    else:
        raise ValueError(f"unknown route {route!r}")
    return shift, combine_blocks(partials)


def correlation_sums(n, beta, h):
    """Returns sums[n+1]: column 0 is sum w, column j is sum w*s1*sj."""
    check_kernel_capacity(n)
    shift = energy_shift(n, beta, h)
    k = split_bits(n - 1)
    partials = _impl().correlation_partials(n, float(beta), float(h), k, shift)
    return combine_blocks(partials)


def chain_spectrum(n):
    """(traces, b_counts) int64 arrays over A-chains of length n, leaf order."""
    check_kernel_capacity(n)
    return _impl().chain_spectrum(n, split_bits(n - 1))


def direct_spectrum(n):
    """(traces, b_counts) int64 arrays over all 2^n words, config order."""
    check_kernel_capacity(n)
    return _impl().direct_spectrum(n, split_bits(n))


def level_pair_chunks(level, chunk=1 << 16):
    """Yield (n_l, d_l, n_r, d_r) int64 chunk arrays over level's adjacent pairs.

    Always uses the vectorized numpy walk (diagnostic path, not the hot
    thermodynamic loop).  Level n has 2^n pairs; denominators stay below
    F_{n+2}, so int64 is exact for n <= 90.
    """
    if level < 0:
        raise ValueError("level index must be >= 0")
    if level + 2 > 92:
        raise ExactIntegerOverflowError(f"level {level} exceeds int64-exact range")
    from . import _kernels_numpy as npk

    total = 1 << level
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        nl, dl, nr, dr, _ = npk._walk_pairs(idx, level, (0, 1, 1, 1, 0))
        yield nl, dl, nr, dr
