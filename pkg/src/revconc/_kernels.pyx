# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_kernels_py``.

Families are limited to 64 configurations over at most 24 events; callers
route larger inputs to the Python implementation.
"""

from libc.stdlib cimport calloc, free
from libc.stdint cimport uint64_t

MAX_CONFIGS = 64
MAX_EVENTS = 24


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(uint64_t v) nogil:
    return __builtin_ctzll(v)


cdef unsigned char* _presence(const uint64_t* masks, int m, int nevents):
    cdef size_t size = (<size_t>1) << nevents
    cdef unsigned char* present = <unsigned char*>calloc(size, 1)
    cdef int i
    if present == NULL:
        raise MemoryError()
    for i in range(m):
        present[masks[i]] = 1
    return present


cdef int _load(object seq, uint64_t* out, int* nevents) except -1:
    cdef int i = 0
    cdef uint64_t acc = 0
    for v in seq:
        out[i] = <uint64_t>v
        acc |= out[i]
        i += 1
    n = 0
    while acc:
        acc >>= 1
        n += 1
    nevents[0] = n
    return i


def supported(masks):
    if len(masks) > MAX_CONFIGS:
        return False
    for v in masks:
        if v < 0 or v >= (1 << MAX_EVENTS):
            return False
    return True


cdef bint _connected_fails(uint64_t x, unsigned char* present) nogil:
    cdef uint64_t rest = x
    cdef uint64_t low
    if x == 0:
        return False
    while rest:
        low = rest & (~rest + 1)
        if present[x & ~low]:
            return False
        rest ^= low
    return True


def stability_witnesses(masks):
    cdef uint64_t buf[64]
    cdef int nev = 0
    cdef int m = _load(masks, buf, &nev)
    cdef unsigned char* present = _presence(buf, m, nev)
    cdef int i, j, k
    cdef uint64_t u, uij, xk
    connected = None
    bounded = None
    inter = None
    coherent = None
    try:
        for i in range(m):
            if _connected_fails(buf[i], present):
                connected = (i,)
                break
        for i in range(m):
            for j in range(i, m):
                u = buf[i] | buf[j]
                if present[u]:
                    continue
                for k in range(m):
                    if u & ~buf[k] == 0:
                        bounded = (i, j, k)
                        break
                if bounded is not None:
                    break
            if bounded is not None:
                break
        for i in range(m):
            for j in range(i, m):
                if not present[buf[i] & buf[j]]:
                    inter = (i, j)
                    break
            if inter is not None:
                break
        for i in range(m):
            for j in range(i, m):
                uij = buf[i] | buf[j]
                if not present[uij]:
                    continue
                for k in range(j, m):
                    xk = buf[k]
                    if present[buf[j] | xk] and present[buf[i] | xk] and not present[uij | xk]:
                        coherent = (i, j, k)
                        break
                if coherent is not None:
                    break
            if coherent is not None:
                break
    finally:
        free(present)
    return connected, bounded, inter, coherent


cdef bint _is_stable(const uint64_t* buf, int m, unsigned char* present) nogil:
    cdef int i, j, k
    cdef uint64_t u, xi, xj, xk
    if not present[0]:
        return False
    for i in range(m):
        if _connected_fails(buf[i], present):
            return False
    for i in range(m):
        xi = buf[i]
        for j in range(i + 1, m):
            xj = buf[j]
            if not present[xi & xj]:
                return False
            u = xi | xj
            if not present[u]:
                for k in range(m):
                    if u & ~buf[k] == 0:
                        return False
    for i in range(m):
        xi = buf[i]
        for j in range(i + 1, m):
            u = xi | buf[j]
            if not present[u]:
                continue
            for k in range(j + 1, m):
                xk = buf[k]
                if present[buf[j] | xk] and present[xi | xk] and not present[u | xk]:
                    return False
    return True


def is_stable(masks):
    cdef uint64_t buf[64]
    cdef int nev = 0
    cdef int m = _load(masks, buf, &nev)
    cdef unsigned char* present = _presence(buf, m, nev)
    cdef bint out
    out = _is_stable(buf, m, present)
    free(present)
    return out


cdef int _least(uint64_t ub, const uint64_t* sup) nogil:
    cdef uint64_t rest = ub
    cdef int u
    while rest:
        u = _ctz(rest)
        if sup[u] & ub == ub:
            return u
        rest &= rest - 1
    return -1


cdef bint _refuted(uint64_t ub, uint64_t allowed, uint64_t target,
                   const uint64_t* sup, const uint64_t* cons) nogil:
    cdef uint64_t rest = allowed
    cdef uint64_t nub, later, above
    cdef int y, least
    while rest:
        y = _ctz(rest)
        rest &= rest - 1
        nub = ub & sup[y]
        if nub & target == 0:
            continue
        least = _least(nub, sup)
        if least >= 0 and (target >> least) & 1:
            return True
        if y == 63:
            continue
        above = ~(((<uint64_t>2) << y) - 1)
        later = allowed & cons[y] & above
        if later and _refuted(nub, later, target, sup, cons):
            return True
    return False


def complete_prime_indices(masks):
    cdef uint64_t buf[64]
    cdef uint64_t sup[64]
    cdef uint64_t cons[64]
    cdef int nev = 0
    cdef int m = _load(masks, buf, &nev)
    cdef int i, j, p
    cdef uint64_t full = (~(<uint64_t>0)) if m == 64 else (((<uint64_t>1) << m) - 1)
    for i in range(m):
        sup[i] = 0
        for j in range(m):
            if buf[i] & ~buf[j] == 0:
                sup[i] |= (<uint64_t>1) << j
    for i in range(m):
        cons[i] = 0
        for j in range(m):
            if i == j or _least(sup[i] & sup[j], sup) >= 0:
                cons[i] |= (<uint64_t>1) << j
    primes = []
    for p in range(m):
        if buf[p] == 0:
            continue
        if not _refuted(full, full & ~sup[p], sup[p], sup, cons):
            primes.append(p)
    return primes


def stable_family_codes(table):
    cdef uint64_t tab[64]
    cdef uint64_t buf[64]
    cdef int nev = 0
    cdef int width = _load(table, tab, &nev)
    cdef size_t size = (<size_t>1) << nev
    cdef unsigned char* present = <unsigned char*>calloc(size, 1)
    cdef uint64_t code, c, limit
    cdef int k, m, i
    if present == NULL:
        raise MemoryError()
    if width > 40:
        free(present)
        raise ValueError("family width too large for exhaustive enumeration")
    limit = (<uint64_t>1) << width
    out = []
    try:
        code = 0
        while code < limit:
            buf[0] = 0
            m = 1
            c = code
            k = 0
            while c:
                if c & 1:
                    buf[m] = tab[k]
                    m += 1
                c >>= 1
                k += 1
            for i in range(m):
                present[buf[i]] = 1
            if _is_stable(buf, m, present):
                out.append(code)
            for i in range(m):
                present[buf[i]] = 0
            code += 1
    finally:
        free(present)
    return out
