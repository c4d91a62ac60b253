# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled witness-search kernel.

Mirrors _kernel_py.search_from_prefix exactly: same tree, same node counts,
same witness.  See that module for the algorithm description.
"""

from libc.stdlib cimport calloc, free

IMPL = "compiled"


cdef struct SearchState:
    int n_points
    int n_bundles
    int k
    int t
    int n_perms
    long budget
    long nodes
    int *bundle_sizes
    int *pb_off
    int *pb
    int *perms      # n_perms rows of n_points
    int *counts     # n_bundles * k
    int *distinct
    int *assigned
    int *color
    int *ren


cdef bint assign(SearchState *st, int p, int c):
    cdef int bi, b
    cdef bint ok = True
    for bi in range(st.pb_off[p], st.pb_off[p + 1]):
        b = st.pb[bi]
        if st.counts[b * st.k + c] == 0:
            st.distinct[b] += 1
        st.counts[b * st.k + c] += 1
        st.assigned[b] += 1
        if st.distinct[b] + (st.bundle_sizes[b] - st.assigned[b]) <= st.t:
            ok = False
    st.color[p] = c
    return ok


cdef void unassign(SearchState *st, int p):
    cdef int bi, b, c
    c = st.color[p]
    st.color[p] = -1
    for bi in range(st.pb_off[p], st.pb_off[p + 1]):
        b = st.pb[bi]
        st.counts[b * st.k + c] -= 1
        if st.counts[b * st.k + c] == 0:
            st.distinct[b] -= 1
        st.assigned[b] -= 1


cdef bint canonical(SearchState *st, int depth):
    cdef int pi, i, cj, ci, r, nxt
    for pi in range(st.n_perms):
        for i in range(st.k):
            st.ren[i] = -1
        nxt = 0
        for i in range(depth):
            cj = st.color[st.perms[pi * st.n_points + i]]
            if cj < 0:
                break
            r = st.ren[cj]
            if r < 0:
                st.ren[cj] = nxt
                r = nxt
                nxt += 1
            ci = st.color[i]
            if r < ci:
                return False
            if r > ci:
                break
    return True


cdef int dfs(SearchState *st, int depth, int used):
    # returns 1 witness found, 0 exhausted, -1 budget exceeded
    cdef int c, limit, r
    if depth == st.n_points:
        return 1
    limit = used + 1
    if limit > st.k:
        limit = st.k
    for c in range(limit):
        st.nodes += 1
        if st.nodes > st.budget:
            return -1
        if assign(st, depth, c) and canonical(st, depth + 1):
            r = dfs(st, depth + 1, used + 1 if c == used else used)
            if r == 1:
                # leave the witness assignment in place for the caller to copy
                return r
            if r == -1:
                unassign(st, depth)
                return r
        unassign(st, depth)
    return 0


def search_from_prefix(n_points, k, t, bundle_sizes, pb_off, pb, perms, prefix, budget):
    """Same contract as _kernel_py.search_from_prefix."""
    cdef SearchState st
    cdef int i, j, p, c, max_used, r
    cdef int n_bundles = len(bundle_sizes)
    cdef int n_perms = len(perms)

    st.n_points = n_points
    st.n_bundles = n_bundles
    st.k = k
    st.t = t
    st.n_perms = n_perms
    st.budget = budget
    st.nodes = 0
    st.bundle_sizes = <int *> calloc(max(n_bundles, 1), sizeof(int))
    st.pb_off = <int *> calloc(n_points + 1, sizeof(int))
    st.pb = <int *> calloc(max(len(pb), 1), sizeof(int))
    st.perms = <int *> calloc(max(n_perms * n_points, 1), sizeof(int))
    st.counts = <int *> calloc(max(n_bundles * k, 1), sizeof(int))
    st.distinct = <int *> calloc(max(n_bundles, 1), sizeof(int))
    st.assigned = <int *> calloc(max(n_bundles, 1), sizeof(int))
    st.color = <int *> calloc(max(n_points, 1), sizeof(int))
    st.ren = <int *> calloc(k, sizeof(int))

    try:
        for i in range(n_bundles):
            st.bundle_sizes[i] = bundle_sizes[i]
        for i in range(n_points + 1):
            st.pb_off[i] = pb_off[i]
        for i in range(len(pb)):
            st.pb[i] = pb[i]
        for i in range(n_perms):
            row = perms[i]
            for j in range(n_points):
                st.perms[i * n_points + j] = row[j]
        for i in range(n_points):
            st.color[i] = -1

        max_used = 0
        for p in range(len(prefix)):
            c = prefix[p]
            if c > max_used or c >= k:
                return None, st.nodes, True
            if not assign(&st, p, c):
                return None, st.nodes, True
            if not canonical(&st, p + 1):
                return None, st.nodes, True
            if c == max_used:
                max_used += 1

        r = dfs(&st, len(prefix), max_used)
        if r == -1:
            return None, st.nodes, False
        if r == 1:
            return [st.color[i] for i in range(n_points)], st.nodes, True
        return None, st.nodes, True
    finally:
        free(st.bundle_sizes)
        free(st.pb_off)
        free(st.pb)
        free(st.perms)
        free(st.counts)
        free(st.distinct)
        free(st.assigned)
        free(st.color)
        free(st.ren)
