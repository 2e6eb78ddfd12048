# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False, language_level=3
"""Compiled depth-first SAW enumeration over an encoded step table.

Elements are rows of ``ncoord`` int64 values:

* kind 0: additive coordinates (free abelian groups);
* kind 1: Heisenberg triple ``(a, b, c)``;
* kind 2: free-group word as ``(length, packed letter codes)``.

The kernel counts walks per ``(monomial key, category)`` and never touches
weights; exact weights are rebuilt from the monomial keys by the caller.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cdef enum:
    MAXC = 8
    OK = 0
    NODE_CAP = 1
    WORD_OVERFLOW = 2


cdef inline uint64_t _mix(uint64_t x) noexcept nogil:
    x += <uint64_t>0x9E3779B97F4A7C15
    x = (x ^ (x >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    x = (x ^ (x >> 27)) * <uint64_t>0x94D049BB133111EB
    return x ^ (x >> 31)


cdef inline uint64_t _hash(const int64_t* x, int nc) noexcept nogil:
    cdef uint64_t h = 0
    cdef int i
    for i in range(nc):
        h = _mix(h + <uint64_t>x[i])
    return h


cdef inline bint _equal(const int64_t* x, const int64_t* y, int nc) noexcept nogil:
    cdef int i
    for i in range(nc):
        if x[i] != y[i]:
            return False
    return True


cdef inline int _multiply(int kind, const int64_t* x, const int64_t* s, int64_t* out, int nc,
                          int bits, int max_letters) noexcept nogil:
    cdef int i, j
    cdef uint64_t mask, xb, sb, code, top
    cdef int64_t xl, sl
    if kind == 0:
        for i in range(nc):
            out[i] = x[i] + s[i]
    elif kind == 1:
        out[0] = x[0] + s[0]
        out[1] = x[1] + s[1]
        out[2] = x[2] + s[2] + x[0] * s[1]
    else:
        mask = (<uint64_t>1 << bits) - 1
        xl = x[0]
        xb = <uint64_t>x[1]
        sl = s[0]
        sb = <uint64_t>s[1]
        for j in range(sl):
            code = (sb >> (bits * j)) & mask
            if xl > 0:
                top = (xb >> (bits * (xl - 1))) & mask
                if top == (code ^ 1):
                    xl -= 1
                    xb &= ~(mask << (bits * xl))
                    continue
            if xl >= max_letters:
                return WORD_OVERFLOW
            xb |= code << (bits * xl)
            xl += 1
        out[0] = xl
        out[1] = <int64_t>xb
    return OK


cdef struct VisitedSet:
    int64_t* keys
    char* used
    uint64_t mask
    int nc


cdef inline int64_t _find(VisitedSet* vs, const int64_t* x) noexcept nogil:
    """Slot holding x, or -(empty slot)-1 where it would go."""
    cdef uint64_t i = _hash(x, vs.nc) & vs.mask
    while vs.used[i]:
        if _equal(vs.keys + i * vs.nc, x, vs.nc):
            return <int64_t>i
        i = (i + 1) & vs.mask
    return -(<int64_t>i) - 1


cdef inline void _insert_at(VisitedSet* vs, int64_t slot, const int64_t* x) noexcept nogil:
    cdef int k
    vs.used[slot] = 1
    for k in range(vs.nc):
        vs.keys[slot * vs.nc + k] = x[k]


cdef inline void _remove(VisitedSet* vs, const int64_t* x) noexcept nogil:
    # Deletions are strictly LIFO, so no later insertion probed past this slot:
    # clearing it leaves every remaining probe chain intact.
    cdef int64_t slot = _find(vs, x)
    if slot >= 0:
        vs.used[slot] = 0


cdef int _run(int kind, const int64_t[:, ::1] steps, const int64_t[::1] step_class,
              const int64_t[::1] step_len, const int64_t[:, ::1] h_delta,
              const int64_t[:, ::1] coset_next, const int64_t[::1] stride,
              const int64_t[::1] base, int base_coset, int64_t budget, int bits, int max_letters,
              const int64_t[::1] first_steps, bint count_root, int64_t node_cap, int max_depth,
              unordered_map[int64_t, int64_t]& counts, unordered_map[int64_t, int64_t]& maxdh,
              int64_t* nodes_out) noexcept nogil:
    cdef int nc = steps.shape[1]
    cdef int S = steps.shape[0]
    cdef int F = first_steps.shape[0]
    cdef int D = max_depth + 1
    cdef vector[int64_t] pos = vector[int64_t](D * nc)
    cdef vector[int64_t] hgt = vector[int64_t](D)
    cdef vector[int64_t] ell = vector[int64_t](D)
    cdef vector[int64_t] key = vector[int64_t](D)
    cdef vector[int64_t] lo = vector[int64_t](D)
    cdef vector[int64_t] hi = vector[int64_t](D)
    cdef vector[int64_t] cos = vector[int64_t](D)
    cdef vector[int64_t] nxt = vector[int64_t](D)
    cdef uint64_t size = 16
    while size < <uint64_t>(4 * D):
        size <<= 1
    cdef vector[int64_t] table_keys = vector[int64_t](size * nc)
    cdef vector[char] table_used = vector[char](size)
    cdef VisitedSet vs
    vs.keys = table_keys.data()
    vs.used = table_used.data()
    vs.mask = size - 1
    vs.nc = nc

    cdef int64_t y[MAXC]
    cdef int64_t nodes = 0, nl, slot, limit, i, s, k, dh, cat
    cdef int64_t root_slot = 2
    cdef int depth = 0, status
    for k in range(nc):
        pos[k] = base[k]
    hgt[0] = 0
    ell[0] = 0
    key[0] = 0
    cos[0] = base_coset
    nxt[0] = 0
    slot = _find(&vs, &pos[0])
    _insert_at(&vs, -slot - 1, &pos[0])
    if count_root:
        counts[root_slot] += 1
        if maxdh.count(0) == 0:
            maxdh[0] = 0

    while depth >= 0:
        limit = F if depth == 0 else S
        i = nxt[depth]
        if i >= limit or depth == max_depth:
            if depth > 0:
                _remove(&vs, &pos[depth * nc])
            depth -= 1
            continue
        nxt[depth] = i + 1
        if depth == 0:
            s = first_steps[i]
        else:
            s = i
        nl = ell[depth] + step_len[s]
        if nl >= budget:
            # steps are sorted by length, so every later sibling is too long as well
            nxt[depth] = limit
            continue
        status = _multiply(kind, &pos[depth * nc], &steps[s, 0], y, nc, bits, max_letters)
        if status != OK:
            nodes_out[0] = nodes
            return status
        slot = _find(&vs, y)
        if slot >= 0:
            continue
        nodes += 1
        if nodes > node_cap:
            nodes_out[0] = nodes
            return NODE_CAP
        _insert_at(&vs, -slot - 1, y)
        depth += 1
        for k in range(nc):
            pos[depth * nc + k] = y[k]
        ell[depth] = nl
        key[depth] = key[depth - 1] + stride[step_class[s]]
        hgt[depth] = hgt[depth - 1] + h_delta[cos[depth - 1], s]
        cos[depth] = coset_next[cos[depth - 1], s]
        if depth == 1:
            lo[1] = hgt[1]
            hi[1] = hgt[1]
        else:
            lo[depth] = lo[depth - 1] if lo[depth - 1] < hgt[depth] else hgt[depth]
            hi[depth] = hi[depth - 1] if hi[depth - 1] > hgt[depth] else hgt[depth]
        nxt[depth] = 0
        # heights are relative to the base vertex, so h(pi_0) = 0
        if lo[depth] > 0:
            cat = 2 if hi[depth] == hgt[depth] else 1
        else:
            cat = 0
        counts[key[depth] * 3 + cat] += 1
        dh = hgt[depth] if hgt[depth] >= 0 else -hgt[depth]
        if maxdh[key[depth]] < dh:
            maxdh[key[depth]] = dh
    nodes_out[0] = nodes
    return OK


def enumerate_counts(int kind, const int64_t[:, ::1] steps, const int64_t[::1] step_class,
                     const int64_t[::1] step_len, const int64_t[:, ::1] h_delta,
                     const int64_t[:, ::1] coset_next, const int64_t[::1] stride,
                     const int64_t[::1] base, int base_coset, int64_t budget, int bits,
                     int max_letters, const int64_t[::1] first_steps, bint count_root,
                     int64_t node_cap, int max_depth):
    """Count SAWs from ``base`` by (monomial key * 3 + category).

    Returns ``(status, counts, max_height_change, nodes)`` where status is 0
    on success, 1 when ``node_cap`` was exceeded and 2 on free-word overflow.
    """
    if steps.shape[1] > MAXC:
        raise ValueError("too many coordinates per element for the compiled kernel")
    cdef unordered_map[int64_t, int64_t] counts
    cdef unordered_map[int64_t, int64_t] maxdh
    cdef int64_t nodes = 0
    cdef int status
    with nogil:
        status = _run(kind, steps, step_class, step_len, h_delta, coset_next, stride, base,
                      base_coset, budget, bits, max_letters, first_steps, count_root, node_cap,
                      max_depth, counts, maxdh, &nodes)
    return status, dict(counts), dict(maxdh), nodes
