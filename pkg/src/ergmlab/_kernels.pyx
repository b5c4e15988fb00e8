# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels. Mirrors ``_pykernels`` exactly."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

cdef int64_t MAX_HIST = 1 << 26


def exponent_histogram(masks, wants, weights, int nbits, int low_bits, prefix):
    cdef Py_ssize_t nt = len(masks)
    cdef Py_ssize_t t, b, k
    cdef int64_t lo = 0, hi = 0, e = 0
    cdef uint64_t code = <uint64_t>prefix
    cdef uint64_t i, end, bm
    cdef int bit
    cdef bint now
    if nbits > 64:
        raise OverflowError("compiled kernel needs at most 64 code bits")
    for w in weights:
        if w < 0:
            lo += w
        else:
            hi += w
    if hi - lo + 1 > MAX_HIST:
        raise OverflowError("exponent range too wide for the compiled histogram")

    cdef uint64_t *cm = <uint64_t *>malloc(max(nt, 1) * sizeof(uint64_t))
    cdef uint64_t *cw = <uint64_t *>malloc(max(nt, 1) * sizeof(uint64_t))
    cdef int64_t *cwt = <int64_t *>malloc(max(nt, 1) * sizeof(int64_t))
    cdef char *sat = <char *>malloc(max(nt, 1))
    cdef Py_ssize_t *start = <Py_ssize_t *>calloc(nbits + 1, sizeof(Py_ssize_t))
    cdef Py_ssize_t *fill = <Py_ssize_t *>calloc(nbits + 1, sizeof(Py_ssize_t))
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t *ids
    cdef int64_t *hist = <int64_t *>calloc(hi - lo + 1, sizeof(int64_t))
    try:
        for t in range(nt):
            cm[t] = <uint64_t>masks[t]
            cw[t] = <uint64_t>wants[t]
            cwt[t] = <int64_t>weights[t]
            for b in range(nbits):
                if cm[t] >> b & 1:
                    start[b + 1] += 1
                    total += 1
        for b in range(nbits):
            start[b + 1] += start[b]
        ids = <Py_ssize_t *>malloc(max(total, 1) * sizeof(Py_ssize_t))
        try:
            for t in range(nt):
                for b in range(nbits):
                    if cm[t] >> b & 1:
                        ids[start[b] + fill[b]] = t
                        fill[b] += 1
            with nogil:
                for t in range(nt):
                    sat[t] = (code & cm[t]) == cw[t]
                    if sat[t]:
                        e += cwt[t]
                hist[e - lo] += 1
                end = (<uint64_t>1) << low_bits
                i = 1
                while i < end:
                    bit = __builtin_ctzll(i)
                    bm = (<uint64_t>1) << bit
                    code ^= bm
                    for k in range(start[bit], start[bit + 1]):
                        t = ids[k]
                        now = (code & cm[t]) == cw[t]
                        if now != sat[t]:
                            sat[t] = now
                            if now:
                                e += cwt[t]
                            else:
                                e -= cwt[t]
                    hist[e - lo] += 1
                    i += 1
        finally:
            free(ids)
        out = {}
        for k in range(hi - lo + 1):
            if hist[k]:
                out[lo + k] = hist[k]
        return out
    finally:
        free(cm)
        free(cw)
        free(cwt)
        free(sat)
        free(start)
        free(fill)
        free(hist)


def trifree_census(int n, edges):
    cdef int m = len(edges)
    cdef int j, u, v, size = 0, bit
    cdef int64_t tri = 0
    cdef uint64_t i, end
    cdef uint64_t adj[64]
    cdef int eu[64]
    cdef int ev[64]
    cdef int64_t counts[65]
    if m > 62 or n > 64:
        raise OverflowError("compiled census supports at most 62 edges on 64 vertices")
    for j in range(64):
        adj[j] = 0
    for j in range(m + 1):
        counts[j] = 0
    for j in range(m):
        eu[j] = edges[j][0]
        ev[j] = edges[j][1]
    counts[0] = 1
    end = (<uint64_t>1) << m
    with nogil:
        i = 1
        while i < end:
            bit = __builtin_ctzll(i)
            u = eu[bit]
            v = ev[bit]
            if adj[u] >> v & 1:
                adj[u] ^= (<uint64_t>1) << v
                adj[v] ^= (<uint64_t>1) << u
                tri -= __builtin_popcountll(adj[u] & adj[v])
                size -= 1
            else:
                tri += __builtin_popcountll(adj[u] & adj[v])
                adj[u] ^= (<uint64_t>1) << v
                adj[v] ^= (<uint64_t>1) << u
                size += 1
            if tri == 0:
                counts[size] += 1
            i += 1
    return [counts[j] for j in range(m + 1)]


cdef int _packing_bound(uint64_t *tris, int ntris, uint64_t deleted, uint64_t kept) nogil:
    cdef uint64_t used = 0, avail
    cdef int bound = 0, j
    for j in range(ntris):
        if tris[j] & deleted:
            continue
        avail = tris[j] & ~kept
        if not avail:
            return -1
        if not (avail & used):
            used |= avail
            bound += 1
    return bound


cdef void _search(uint64_t *tris, int ntris, int budget, uint64_t deleted, uint64_t kept,
                  int size, list found, int64_t *nodes):
    cdef int j, first = -1, lb
    cdef uint64_t t, r, e, blocked
    nodes[0] += 1
    for j in range(ntris):
        if not (tris[j] & deleted):
            first = j
            break
    if first < 0:
        found.append(deleted)
        return
    lb = _packing_bound(tris, ntris, deleted, kept)
    if lb < 0 or size + lb > budget:
        return
    t = tris[first]
    blocked = kept
    r = t
    while r:
        e = r & (~r + 1)
        r ^= e
        if not (e & kept):
            _search(tris, ntris, budget, deleted | e, blocked, size + 1, found, nodes)
            blocked |= e


def hitting_sets(tris, int budget):
    cdef int ntris = len(tris)
    cdef int j
    cdef int64_t nodes = 0
    cdef uint64_t *ct = <uint64_t *>malloc(max(ntris, 1) * sizeof(uint64_t))
    found = []
    try:
        for j in range(ntris):
            if tris[j] >> 64:
                raise OverflowError("compiled search supports at most 64 edges")
            ct[j] = <uint64_t>tris[j]
        _search(ct, ntris, budget, 0, 0, 0, found, &nodes)
    finally:
        free(ct)
    return found, nodes
