# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitset kernels; mirrors _bitops_py exactly.

Rows come in and go out as Python integers.  Internally they are packed
into little-endian uint64 word arrays so the pair scan runs as straight
C loops.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_clzll(unsigned long long)
    int __builtin_ctzll(unsigned long long)

ctypedef unsigned long long u64

BACKEND_NAME = "compiled"


cdef u64 *_pack(rows, Py_ssize_t n, Py_ssize_t nw) except NULL:
    cdef u64 *buf = <u64 *> calloc(n * nw, sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef bytes b
    for i in range(n):
        b = rows[i].to_bytes(nw * 8, "little")
        memcpy(buf + i * nw, <const char *> b, nw * 8)
    return buf


cdef object _unpack_row(u64 *row, Py_ssize_t nw):
    cdef bytes b = (<const char *> row)[:nw * 8]
    return int.from_bytes(b, "little")


def transitive_closure(Py_ssize_t n, covers):
    """Same contract as the pure backend."""
    cdef Py_ssize_t nw = (n + 63) // 64
    cdef u64 *down = <u64 *> calloc(n * nw, sizeof(u64))
    cdef u64 *up = <u64 *> calloc(n * nw, sizeof(u64))
    if down == NULL or up == NULL:
        if down != NULL:
            free(down)
        if up != NULL:
            free(up)
        raise MemoryError()
    cdef Py_ssize_t i, w, x, y, c, p
    children = [[] for _ in range(n)]
    parents = [[] for _ in range(n)]
    for x, y in covers:
        children[y].append(x)
        parents[x].append(y)
    try:
        for i in range(n):
            down[i * nw + (i >> 6)] |= <u64> 1 << (i & 63)
            up[i * nw + (i >> 6)] |= <u64> 1 << (i & 63)
        # positions are topologically sorted, so one ascending sweep
        # completes every down-set (and a descending sweep every up-set)
        for y in range(n):
            for c in children[y]:
                for w in range(nw):
                    down[y * nw + w] |= down[c * nw + w]
        for x in range(n - 1, -1, -1):
            for p in parents[x]:
                for w in range(nw):
                    up[x * nw + w] |= up[p * nw + w]
        down_rows = [_unpack_row(down + i * nw, nw) for i in range(n)]
        up_rows = [_unpack_row(up + i * nw, nw) for i in range(n)]
        return down_rows, up_rows
    finally:
        free(down)
        free(up)


def scan_pairs(Py_ssize_t n, down, up, rank):
    """Same contract as the pure backend."""
    cdef Py_ssize_t nw = (n + 63) // 64
    cdef u64 *dbuf = _pack(down, n, nw)
    cdef u64 *ubuf
    try:
        ubuf = _pack(up, n, nw)
    except BaseException:
        free(dbuf)
        raise
    cdef long *ranks = <long *> calloc(n, sizeof(long))
    if ranks == NULL:
        free(dbuf)
        free(ubuf)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        ranks[i] = rank[i]

    cdef Py_ssize_t x, y, w, m, j
    cdef u64 d, u
    cdef u64 *dx
    cdef u64 *ux
    cdef u64 *dy
    cdef u64 *uy
    cdef long rx
    cdef bint bad
    cdef Py_ssize_t semi_x = -1, semi_y = -1
    cdef Py_ssize_t fail_kind = 0, fail_x = 0, fail_y = 0
    try:
        for x in range(n):
            dx = dbuf + x * nw
            ux = ubuf + x * nw
            rx = ranks[x]
            for y in range(x + 1, n):
                if (ux[y >> 6] >> (y & 63)) & 1:
                    continue
                dy = dbuf + y * nw
                uy = ubuf + y * nw
                # meet: highest set bit of dx & dy
                m = -1
                for w in range(nw - 1, -1, -1):
                    d = dx[w] & dy[w]
                    if d != 0:
                        m = (w << 6) + 63 - __builtin_clzll(d)
                        break
                if m < 0:
                    fail_kind = 1
                    fail_x = x
                    fail_y = y
                    raise StopIteration
                bad = False
                for w in range(nw):
                    if (dx[w] & dy[w]) != dbuf[m * nw + w]:
                        bad = True
                        break
                if bad:
                    fail_kind = 1
                    fail_x = x
                    fail_y = y
                    raise StopIteration
                # join: lowest set bit of ux & uy
                j = -1
                for w in range(nw):
                    u = ux[w] & uy[w]
                    if u != 0:
                        j = (w << 6) + __builtin_ctzll(u)
                        break
                if j < 0:
                    fail_kind = 2
                    fail_x = x
                    fail_y = y
                    raise StopIteration
                bad = False
                for w in range(nw):
                    if (ux[w] & uy[w]) != ubuf[j * nw + w]:
                        bad = True
                        break
                if bad:
                    fail_kind = 2
                    fail_x = x
                    fail_y = y
                    raise StopIteration
                if semi_x < 0 and ranks[m] + ranks[j] > rx + ranks[y]:
                    semi_x = x
                    semi_y = y
    except StopIteration:
        pass
    finally:
        free(dbuf)
        free(ubuf)
        free(ranks)
    if fail_kind == 1:
        return (fail_x, fail_y), None, None
    if fail_kind == 2:
        return None, (fail_x, fail_y), None
    if semi_x >= 0:
        return None, None, (semi_x, semi_y)
    return None, None, None
