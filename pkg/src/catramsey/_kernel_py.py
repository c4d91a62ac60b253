"""Pure-Python witness-search kernel.

Searches for a coloring of n_points points with k colors such that every
bundle (a subset of points) receives more than t distinct colors.  Colorings
are enumerated in restricted-growth form (first use of each color is in
increasing order), which quotients out color permutations; point permutations
supplied by the caller are quotiented by lexicographic prefix canonicity.

The compiled kernel in _kernel.pyx implements the identical search; both must
visit the same tree.
"""

from __future__ import annotations

IMPL = "python"


def search_from_prefix(n_points, k, t, bundle_sizes, pb_off, pb, perms, prefix, budget):
    """Explore the subtree under a restricted-growth prefix.

    Returns (witness, nodes, exhausted): witness is a full color list when a
    coloring with all bundles seeing > t colors exists in the subtree, nodes
    counts assignments tried, exhausted is False only when the node budget
    was hit before the subtree was fully explored.
    """
    n_bundles = len(bundle_sizes)
    counts = [[0] * k for _ in range(n_bundles)]
    distinct = [0] * n_bundles
    assigned = [0] * n_bundles
    color = [-1] * n_points
    nodes = 0

    def assign(p, c):
        # returns False when some touched bundle can no longer exceed t
        ok = True
        for bi in range(pb_off[p], pb_off[p + 1]):
            b = pb[bi]
            if counts[b][c] == 0:
                distinct[b] += 1
            counts[b][c] += 1
            assigned[b] += 1
            if distinct[b] + (bundle_sizes[b] - assigned[b]) <= t:
                ok = False
        color[p] = c
        return ok

    def unassign(p):
        c = color[p]
        color[p] = -1
        for bi in range(pb_off[p], pb_off[p + 1]):
            b = pb[bi]
            counts[b][c] -= 1
            if counts[b][c] == 0:
                distinct[b] -= 1
            assigned[b] -= 1

    def canonical(depth):
        # reject when some permuted, color-renumbered prefix is lex-smaller
        for row in perms:
            ren = [-1] * k
            nxt = 0
            for i in range(depth):
                cj = color[row[i]]
                if cj < 0:
                    break
                r = ren[cj]
                if r < 0:
                    ren[cj] = r = nxt
                    nxt += 1
                ci = color[i]
                if r < ci:
                    return False
                if r > ci:
                    break
        return True

    # replay the prefix; a pruned prefix means an empty (exhausted) subtree
    max_used = 0
    for p, c in enumerate(prefix):
        if c > max_used or c >= k:
            return None, nodes, True
        if not assign(p, c):
            return None, nodes, True
        if not canonical(p + 1):
            return None, nodes, True
        if c == max_used:
            max_used += 1

    BUDGET = object()

    def dfs(depth, used):
        nonlocal nodes
        if depth == n_points:
            return list(color)
        for c in range(min(used + 1, k)):
            nodes += 1
            if nodes > budget:
                return BUDGET
            ok = assign(depth, c)
            if ok and canonical(depth + 1):
                r = dfs(depth + 1, used + 1 if c == used else used)
                if r is not None:
                    unassign(depth)
                    return r
            unassign(depth)
        return None

    result = dfs(len(prefix), max_used)
    if result is BUDGET:
        return None, nodes, False
    return result, nodes, True
