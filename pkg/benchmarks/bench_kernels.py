"""Benchmark the compiled bit kernels against the pure-Python twin.

Run after an editable install:

    python benchmarks/bench_kernels.py

Each workload is executed with both backends (when the extension is built)
and results are checked to agree before timings are reported.
"""

import random
import time

from cxtcat import _bitcore_py
from cxtcat.order import FiniteLattice, powerset_lattice

try:
    from cxtcat import _bitcore
except ImportError:
    _bitcore = None


def _lattice_arrays(L: FiniteLattice):
    P = L.poset
    return P.up_masks, P.down_masks, L.join_flat


def bench(label, fn_pure, fn_fast, repeat=3):
    t0 = time.perf_counter()
    for _ in range(repeat):
        ref = fn_pure()
    pure_s = (time.perf_counter() - t0) / repeat
    if _bitcore is None:
        print(f"{label:<38} pure {pure_s * 1e3:9.2f} ms   (no compiled backend)")
        return
    t0 = time.perf_counter()
    for _ in range(repeat):
        out = fn_fast()
    fast_s = (time.perf_counter() - t0) / repeat
    assert out == ref, f"{label}: backends disagree"
    print(
        f"{label:<38} pure {pure_s * 1e3:9.2f} ms   compiled {fast_s * 1e3:9.2f} ms"
        f"   speedup {pure_s / fast_s:6.1f}x"
    )


def main():
    rng = random.Random(20240917)

    n_attrs, n_objs = 14, 40
    rows = [rng.getrandbits(n_attrs) for _ in range(n_objs)]
    bench(
        f"closed sets, powerset scan ({n_objs}x{n_attrs})",
        lambda: _bitcore_py.closed_masks_powerset(rows, n_attrs),
        lambda: _bitcore.closed_masks_powerset(rows, n_attrs),
    )
    bench(
        f"closed sets, saturation ({n_objs}x{n_attrs})",
        lambda: _bitcore_py.closed_masks_saturate(rows, n_attrs),
        lambda: _bitcore.closed_masks_saturate(rows, n_attrs),
    )

    cube = powerset_lattice([f"b{i}" for i in range(4)], guard=16)
    up, down, join = _lattice_arrays(cube)
    bench(
        "compact elements, 16-element cube",
        lambda: _bitcore_py.compact_mask(up, down, join),
        lambda: _bitcore.compact_mask(up, down, join),
    )
    small = powerset_lattice([f"b{i}" for i in range(3)], guard=16)
    up3, down3, join3 = _lattice_arrays(small)
    bench(
        "scott opens, 8-element cube",
        lambda: _bitcore_py.scott_open_masks(up3, down3, join3),
        lambda: _bitcore.scott_open_masks(up3, down3, join3),
    )

    n_src = 6
    preds = [[j for j in range(i)] for i in range(n_src)]  # a chain
    tgt_up = up  # the 16-element cube
    bench(
        "monotone maps, 6-chain into cube",
        lambda: _bitcore_py.monotone_maps(n_src, preds, tgt_up),
        lambda: _bitcore.monotone_maps(n_src, preds, tgt_up),
    )


if __name__ == "__main__":
    main()
