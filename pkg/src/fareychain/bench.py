"""Benchmark the numba kernels against the pure-numpy fallback.

Times the partition kernel (the hot path) on both implementations regardless
of the active FAREYCHAIN_BACKEND, reports per-call wall time and the
speedup, and cross-checks that the two backends agree.
"""

import math
import time

from . import backend, kernels


def _time_call(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_bench(n=22, repeat=3, beta=2.5, h=0.3):
    """Returns report lines; numba rows are skipped when numba is missing."""
    from . import _kernels_numpy as npk

    k = kernels.split_bits(n - 1)
    shift = kernels.energy_shift(n, beta, h)
    lines = [
        f"partition kernel: n={n} (2^{n - 1} chain leaves), beta={beta}, h={h}, blocks=2^{k}"
    ]
    results = {}

    def run_numpy():
        return npk.partition_partials(n, beta, h, k, shift)

    t_np = _time_call(run_numpy, repeat)
    results["numpy"] = kernels.combine_blocks(run_numpy())
    lines.append(f"numpy : {t_np * 1e3:10.2f} ms/call   (best of {repeat})")

    if backend.have_numba():
        from . import _kernels_numba as nbk

        def run_numba():
            return nbk.partition_partials(n, beta, h, k, shift)

        run_numba()  # JIT warmup outside the timed region
        t_nb = _time_call(run_numba, repeat)
        results["numba"] = kernels.combine_blocks(run_numba())
        lines.append(f"numba : {t_nb * 1e3:10.2f} ms/call   (best of {repeat})")
        lines.append(f"speedup numba/numpy: {t_np / t_nb:.2f}x")
        za = results["numba"][kernels.COL_WA] + results["numba"][kernels.COL_WB]
        zb = results["numpy"][kernels.COL_WA] + results["numpy"][kernels.COL_WB]
        rel = abs(za - zb) / max(abs(za), abs(zb))
        lines.append(f"cross-backend relative difference: {rel:.3e}")
    else:
        lines.append("numba : unavailable (numpy fallback only)")
    return lines
