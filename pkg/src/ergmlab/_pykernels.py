"""Pure-Python implementations of the enumeration kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``ERGMLAB_PURE_PYTHON`` is set.
"""

from __future__ import annotations


def _per_bit(masks, nbits):
    out = [[] for _ in range(nbits)]
    for t, mask in enumerate(masks):
        for b in range(nbits):
            if mask >> b & 1:
                out[b].append(t)
    return out


def exponent_histogram(masks, wants, weights, nbits, low_bits, prefix):
    """Histogram ``{exponent: count}`` over the codes ``prefix | x`` for
    ``0 <= x < 2**low_bits``, walking ``x`` in Gray-code order."""
    by_bit = _per_bit(masks, nbits)
    code = prefix
    sat = [code & m == w for m, w in zip(masks, wants)]
    e = sum(wt for s, wt in zip(sat, weights) if s)
    hist = {e: 1}
    for i in range(1, 1 << low_bits):
        bit = (i & -i).bit_length() - 1
        code ^= 1 << bit
        for t in by_bit[bit]:
            now = code & masks[t] == wants[t]
            if now != sat[t]:
                sat[t] = now
                e += weights[t] if now else -weights[t]
        hist[e] = hist.get(e, 0) + 1
    return hist


def trifree_census(n, edges):
    """``counts[i]`` = number of triangle-free ``i``-edge subsets of ``edges``."""
    m = len(edges)
    adj = [0] * n
    counts = [0] * (m + 1)
    counts[0] = 1
    size = tri = 0
    for i in range(1, 1 << m):
        bit = (i & -i).bit_length() - 1
        u, v = edges[bit]
        if adj[u] >> v & 1:
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u
            tri -= (adj[u] & adj[v]).bit_count()
            size -= 1
        else:
            tri += (adj[u] & adj[v]).bit_count()
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u
            size += 1
        if tri == 0:
            counts[size] += 1
    return counts


def _packing_bound(tris, deleted, kept):
    """Lower bound on further deletions: greedy edge-disjoint packing of the
    uncovered triangles, counting only deletable edges. ``-1`` if some
    uncovered triangle has no deletable edge."""
    used = 0
    bound = 0
    for t in tris:
        if t & deleted:
            continue
        avail = t & ~kept
        if not avail:
            return -1
        if not avail & used:
            used |= avail
            bound += 1
    return bound


def hitting_sets(tris, budget):
    """All triangle hitting sets of size ``<= budget`` reachable by branching on
    the first uncovered triangle (delete its ``i``-th edge, keep the earlier
    ones). Each set is produced at most once. Returns ``(sets, nodes)``."""
    found = []
    nodes = 0
    ntris = len(tris)

    def search(deleted, kept, size):
        nonlocal nodes
        nodes += 1
        first = -1
        for j in range(ntris):
            if not tris[j] & deleted:
                first = j
                break
        if first < 0:
            found.append(deleted)
            return
        lb = _packing_bound(tris, deleted, kept)
        if lb < 0 or size + lb > budget:
            return
        t = tris[first]
        blocked = kept
        r = t
        while r:
            e = r & -r
            r ^= e
            if not e & kept:
                search(deleted | e, blocked, size + 1)
                blocked |= e

    search(0, 0, 0)
    return found, nodes
