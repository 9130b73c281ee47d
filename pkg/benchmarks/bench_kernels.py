"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat K]

Times ``group_rows`` on the widest default quasi-identifier key,
``coresident_pairs`` on the household index, and a full 8-spec uniqueness
sweep run end to end under each backend. Outputs are checked for equality.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from reident import kernels
from reident.synthgen import SynthConfig, generate_population
from reident.uniqueness import DEFAULT_SPECS, equivalence_classes, quasi_key_columns


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def sweep_with(backend, ds) -> list[float]:
    saved = kernels.group_rows
    kernels.group_rows = backend.group_rows
    try:
        return [equivalence_classes(ds, s).unique_fraction for s in DEFAULT_SPECS]
    finally:
        kernels.group_rows = saved


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only numpy is available")
    ds, _ = generate_population(SynthConfig(population_size=args.size, seed=2009))
    keys = quasi_key_columns(ds, DEFAULT_SPECS[0])
    index = ds.indexes.by_address_l0
    print(f"records={len(ds)} households={len(index)} default backend={kernels.BACKEND}")

    results: dict[str, dict[str, tuple[float, object]]] = {}
    for name, backend in sorted(backends.items()):
        results[name] = {
            "group_rows": best_of(lambda: backend.group_rows(keys), args.repeat),
            "coresident_pairs": best_of(
                lambda: backend.coresident_pairs(index.ids, index.offsets, ds.gender), args.repeat),
            "sweep (8 specs)": best_of(lambda: sweep_with(backend, ds), args.repeat),
        }

    print(f"{'kernel':<20}" + "".join(f"{n:>12}" for n in sorted(results)) + "     speedup")
    for task in results["numpy"]:
        times = {n: results[n][task][0] for n in results}
        row = f"{task:<20}" + "".join(f"{times[n]:>11.3f}s" for n in sorted(times))
        if "cython" in times:
            row += f"  {times['numpy'] / times['cython']:>9.2f}x"
        print(row)

    if "cython" in results:
        a, b = results["numpy"], results["cython"]
        same = (all(np.array_equal(x, y) for x, y in zip(a["group_rows"][1], b["group_rows"][1]))
                and all(np.array_equal(x, y) for x, y in zip(a["coresident_pairs"][1], b["coresident_pairs"][1]))
                and a["sweep (8 specs)"][1] == b["sweep (8 specs)"][1])
        print("outputs identical:", same)


if __name__ == "__main__":
    main()
