#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Both implementations walk identical search trees, so the node counts must
match exactly; only the wall time differs.  Run from the repository root:

    python3 benchmarks/bench_kernel.py
"""

import argparse
import time

from catramsey import _kernel_py
from catramsey.arrows import ArrowQuery, _domain_bundles_perms
from catramsey.generators import UniverseSpec, generate, object_of_size
from catramsey.kernel import branch_prefixes, build_problem

try:
    from catramsey import _kernel
except ImportError:
    _kernel = None


def instances():
    lo6 = generate(UniverseSpec("LO", 6))
    lo7 = generate(UniverseSpec("LO", 7))
    inj4 = generate(UniverseSpec("Inj", 4))
    out = []
    for cat, fam, a, b, c, k, t in (
        (lo6, "LO", 2, 3, 6, 2, 1),
        (lo6, "LO", 2, 3, 5, 2, 1),
        (lo7, "LO", 2, 3, 7, 2, 1),
        (lo6, "LO", 3, 4, 6, 3, 2),
        (inj4, "Inj", 2, 3, 4, 2, 1),
        (inj4, "Inj", 2, 3, 4, 3, 2),
    ):
        A = object_of_size(cat, fam, a)
        B = object_of_size(cat, fam, b)
        C = object_of_size(cat, fam, c)
        name = f"{fam} C={c} B={b} A={a} k={k} t={t}"
        q = ArrowQuery(A, B, C, k, t)
        items, bundles, perms = _domain_bundles_perms(cat, q)
        pr = build_problem(len(items), bundles, k, t, perms)
        out.append((name, pr))
    return out


def run(impl, pr, budget):
    total_nodes = 0
    t0 = time.perf_counter()
    for prefix in branch_prefixes(pr.n_points, pr.k):
        witness, nodes, _ = impl.search_from_prefix(
            pr.n_points, pr.k, pr.t, pr.bundle_sizes, pr.pb_off, pr.pb, pr.perms, prefix, budget
        )
        total_nodes += nodes
        if witness is not None:
            break
    return time.perf_counter() - t0, total_nodes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--budget", type=int, default=10**8)
    args = ap.parse_args()

    if _kernel is None:
        print("compiled kernel unavailable; benchmarking the fallback only")
    header = f"{'instance':38s} {'nodes':>10s} {'pure ms':>9s} {'compiled ms':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, pr in instances():
        t_py = min(run(_kernel_py, pr, args.budget)[0] for _ in range(args.repeats))
        _, nodes_py = run(_kernel_py, pr, args.budget)
        if _kernel is not None:
            t_c = min(run(_kernel, pr, args.budget)[0] for _ in range(args.repeats))
            _, nodes_c = run(_kernel, pr, args.budget)
            assert nodes_c == nodes_py, f"node counts diverge on {name}"
            print(f"{name:38s} {nodes_py:10d} {t_py * 1e3:9.2f} {t_c * 1e3:12.2f} {t_py / t_c:7.1f}x")
        else:
            print(f"{name:38s} {nodes_py:10d} {t_py * 1e3:9.2f} {'-':>12s} {'-':>8s}")


if __name__ == "__main__":
    main()
