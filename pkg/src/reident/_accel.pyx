# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Semantics are pinned by ``reident._fallback``."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, uint8_t

cnp.import_array()


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    # splitmix64 finalizer
    z = (z ^ (z >> 30)) * <uint64_t>0xbf58476d1ce4e5b9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94d049bb133111ebULL
    return z ^ (z >> 31)


def group_rows(keys):
    """Hash-aggregate the rows of a 2-D int64 key matrix.

    Returns ``(class_ids, counts)``: class ids are dense and numbered in
    order of first appearance; ``counts[c]`` is the size of class ``c``.
    Full rows are compared whenever two rows land in the same slot, so hash
    collisions never merge distinct keys.
    """
    cdef const int64_t[:, ::1] k = np.ascontiguousarray(keys, dtype=np.int64)
    cdef Py_ssize_t n = k.shape[0]
    cdef Py_ssize_t width = k.shape[1]
    cdef Py_ssize_t cap = 16
    while cap < 2 * n:
        cap <<= 1
    cdef uint64_t mask = <uint64_t>(cap - 1)

    slot_row_arr = np.full(cap, -1, dtype=np.int64)
    slot_hash_arr = np.zeros(cap, dtype=np.uint64)
    slot_class_arr = np.zeros(cap, dtype=np.int64)
    class_arr = np.empty(n, dtype=np.int64)
    count_arr = np.zeros(max(n, 1), dtype=np.int64)

    cdef int64_t[::1] slot_row = slot_row_arr
    cdef uint64_t[::1] slot_hash = slot_hash_arr
    cdef int64_t[::1] slot_class = slot_class_arr
    cdef int64_t[::1] cls = class_arr
    cdef int64_t[::1] counts = count_arr

    cdef Py_ssize_t i, j, r
    cdef uint64_t h, pos
    cdef int64_t n_classes = 0
    cdef bint same

    with nogil:
        for i in range(n):
            h = <uint64_t>0x9e3779b97f4a7c15ULL
            for j in range(width):
                h = _mix(h ^ <uint64_t>k[i, j])
            pos = h & mask
            while True:
                r = slot_row[pos]
                if r < 0:
                    slot_row[pos] = i
                    slot_hash[pos] = h
                    slot_class[pos] = n_classes
                    cls[i] = n_classes
                    counts[n_classes] = 1
                    n_classes += 1
                    break
                if slot_hash[pos] == h:
                    same = True
                    for j in range(width):
                        if k[r, j] != k[i, j]:
                            same = False
                            break
                    if same:
                        cls[i] = slot_class[pos]
                        counts[slot_class[pos]] += 1
                        break
                pos = (pos + 1) & mask

    return class_arr, count_arr[:n_classes].copy()


def coresident_pairs(order, offsets, gender):
    """Enumerate every (male, female) pair sharing an address group.

    ``order`` lists record ids grouped by address, ``offsets`` delimits the
    groups (CSR layout), ``gender`` is 0 for male and 1 for female. Pairs
    come out group by group, male-major, both in ``order`` sequence.
    """
    cdef const int64_t[::1] o = np.ascontiguousarray(order, dtype=np.int64)
    cdef const int64_t[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const uint8_t[::1] g = np.ascontiguousarray(gender, dtype=np.uint8)
    cdef Py_ssize_t n_groups = off.shape[0] - 1
    cdef Py_ssize_t a, b, s, e, total = 0
    cdef int64_t nm, nf

    with nogil:
        for a in range(n_groups):
            s = off[a]
            e = off[a + 1]
            if e - s < 2:
                continue
            nm = 0
            nf = 0
            for b in range(s, e):
                if g[o[b]] == 0:
                    nm += 1
                else:
                    nf += 1
            total += nm * nf

    males_arr = np.empty(total, dtype=np.int64)
    females_arr = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] males = males_arr
    cdef int64_t[::1] females = females_arr
    cdef Py_ssize_t p = 0, x, y

    with nogil:
        for a in range(n_groups):
            s = off[a]
            e = off[a + 1]
            if e - s < 2:
                continue
            for x in range(s, e):
                if g[o[x]] != 0:
                    continue
                for y in range(s, e):
                    if g[o[y]] == 0:
                        continue
                    males[p] = o[x]
                    females[p] = o[y]
                    p += 1

    return males_arr, females_arr
