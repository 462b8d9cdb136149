# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition search for graphs with at most 64 vertices."""
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdint cimport uint64_t

from ._kernels import MEMO_LIMIT, BudgetExceeded


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef struct State:
    int n
    int h
    int length
    bint complete
    bint allow_skip
    bint memo
    long long nodes
    long long budget
    uint64_t adj[64]
    uint64_t need[64]
    uint64_t parts[64]
    uint64_t reach[64]
    uint64_t key[512]
    int order[64]
    int assign[64]


cdef inline uint64_t lowbit(uint64_t x) nogil:
    return x & (~x + 1)


cdef uint64_t flood(State* s, uint64_t seed, uint64_t allowed) nogil:
    cdef uint64_t reach = seed, frontier = seed, nbr, low
    while frontier:
        nbr = 0
        while frontier:
            low = lowbit(frontier)
            nbr |= s.adj[__builtin_ctzll(low)]
            frontier ^= low
        frontier = nbr & allowed & ~reach
        reach |= frontier
    return reach


cdef bint feasible(State* s, uint64_t unassigned) nogil:
    cdef int q, r, empties = 0
    cdef uint64_t P, R, closed, x, low, req
    for q in range(s.h):
        P = s.parts[q]
        if P == 0:
            empties += 1
            s.reach[q] = 0
            continue
        R = flood(s, lowbit(P), P | unassigned)
        if P & ~R:
            return False
        s.reach[q] = R
    if empties > __builtin_popcountll(unassigned):
        return False
    for q in range(s.h):
        if s.parts[q] == 0:
            continue
        R = s.reach[q]
        closed = R
        x = R
        while x:
            low = lowbit(x)
            closed |= s.adj[__builtin_ctzll(low)]
            x ^= low
        req = s.need[q]
        while req:
            low = lowbit(req)
            r = __builtin_ctzll(low)
            req ^= low
            if s.parts[r]:
                if not (closed & s.reach[r]):
                    return False
            elif not (R & unassigned):
                return False
    return True


cdef bytes state_key(State* s, int k, uint64_t unassigned):
    """Frontier signature of the current state (see the pure kernel)."""
    cdef uint64_t frontier = 0, x, low, P, rest, c, cq, row
    cdef uint64_t first[64]
    cdef int labels[64]
    cdef int q, r, i, j, m = 0, w = 0, empties = 0, tmp
    cdef uint64_t comps[64]
    cdef int ncomp
    x = unassigned
    while x:
        low = lowbit(x)
        frontier |= s.adj[__builtin_ctzll(low)]
        x ^= low
    for q in range(s.h):
        if s.parts[q] == 0:
            empties += 1
            continue
        labels[m] = q
        # smallest frontier component mask, 0 for closed parts
        P = s.parts[q]
        rest = P
        first[m] = 0
        while rest:
            c = flood(s, lowbit(rest), P)
            rest &= ~c
            if c & frontier and (first[m] == 0 or (c & frontier) < first[m]):
                first[m] = c & frontier
        m += 1
    if s.complete:
        for i in range(1, m):
            j = i
            while j > 0 and first[j - 1] > first[j]:
                row = first[j - 1]
                first[j - 1] = first[j]
                first[j] = row
                tmp = labels[j - 1]
                labels[j - 1] = labels[j]
                labels[j] = tmp
                j -= 1
    s.key[w] = k
    w += 1
    s.key[w] = empties
    w += 1
    for i in range(m):
        q = labels[i]
        P = s.parts[q]
        if not s.complete:
            s.key[w] = q
            w += 1
        ncomp = 0
        rest = P
        while rest:
            c = flood(s, lowbit(rest), P)
            rest &= ~c
            if c & frontier:
                comps[ncomp] = c & frontier
                ncomp += 1
        for r in range(1, ncomp):
            j = r
            while j > 0 and comps[j - 1] > comps[j]:
                row = comps[j - 1]
                comps[j - 1] = comps[j]
                comps[j] = row
                j -= 1
        s.key[w] = ncomp
        w += 1
        for r in range(ncomp):
            s.key[w] = comps[r]
            w += 1
        cq = P
        x = P
        while x:
            low = lowbit(x)
            cq |= s.adj[__builtin_ctzll(low)]
            x ^= low
        row = 0
        for j in range(m):
            if cq & s.parts[labels[j]]:
                row |= (<uint64_t>1) << j
        s.key[w] = row
        w += 1
    return PyBytes_FromStringAndSize(<char*>s.key, w * 8)


cdef int dfs(State* s, int k, int used, uint64_t unassigned, set failed) except -2:
    cdef int v, p, limit, got
    cdef uint64_t bit
    cdef bytes key = None
    s.nodes += 1
    if s.nodes > s.budget:
        return -1
    if k == s.length:
        return 1
    if s.memo and k > 0:
        key = state_key(s, k, unassigned)
        if key in failed:
            return 0
    v = s.order[k]
    bit = (<uint64_t>1) << v
    unassigned &= ~bit
    limit = s.h
    if s.complete and used + 1 < limit:
        limit = used + 1
    for p in range(limit):
        s.parts[p] |= bit
        s.assign[v] = p
        if feasible(s, unassigned):
            got = dfs(s, k + 1, used if used > p + 1 else p + 1, unassigned, failed)
            if got != 0:
                return got
        s.parts[p] &= ~bit
    s.assign[v] = -1
    if s.allow_skip and feasible(s, unassigned):
        got = dfs(s, k + 1, used, unassigned, failed)
        if got != 0:
            return got
    if key is not None and len(failed) < MEMO_LIMIT:
        failed.add(key)
    return 0


def partition_search(int n, list adj, list order, int h, list need,
                     bint complete, bint allow_skip, long long budget, bint memo=True):
    """Same contract as the pure-Python kernel."""
    cdef State s
    cdef int i, got
    cdef uint64_t unassigned = 0
    if n > 64 or h > 64:
        raise ValueError("compiled kernel supports at most 64 vertices and parts")
    s.n = n
    s.h = h
    s.length = len(order)
    s.complete = complete
    s.allow_skip = allow_skip
    s.memo = memo and not allow_skip
    s.nodes = 0
    s.budget = budget
    for i in range(n):
        s.adj[i] = adj[i]
        s.assign[i] = -1
    for i in range(h):
        s.need[i] = need[i]
        s.parts[i] = 0
    for i in range(s.length):
        s.order[i] = order[i]
        unassigned |= (<uint64_t>1) << s.order[i]
    got = dfs(&s, 0, 0, unassigned, set())
    if got < 0:
        raise BudgetExceeded(s.nodes)
    if got == 0:
        return None, s.nodes
    return [s.assign[i] for i in range(n)], s.nodes
