# cython: boundscheck=False, wraparound=False
"""Fraction-free row reduction, compiled twin of ``_rowred_py``.

Entries are arbitrary-precision Python ints, so the win over the pure
version comes from typed loop indices and list accesses, not from C
arithmetic.  The algorithm must stay line-for-line equivalent to
``_rowred_py.reduce_int_rows``: ``nodalic.linalg`` treats the two as
interchangeable and the test suite asserts identical output.
"""

from math import gcd

BACKEND = "cython"


def reduce_int_rows(list rows, Py_ssize_t ncols, bint reduced=True):
    """Row-reduce ``rows`` (lists of ints) in place; return pivot columns.

    See ``_rowred_py.reduce_int_rows`` for the full contract.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, p, k, start
    cdef list pivots = []
    cdef list piv_row, row
    cdef object prev = 1
    cdef object piv, f, g

    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = <list>rows[r]
        piv = piv_row[c]
        for i in range(r + 1, nrows):
            row = <list>rows[i]
            f = row[c]
            for j in range(c, ncols):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1

    if reduced:
        for k in range(len(pivots) - 1, 0, -1):
            c = <Py_ssize_t>pivots[k]
            piv_row = <list>rows[k]
            piv = piv_row[c]
            for i in range(k):
                row = <list>rows[i]
                f = row[c]
                if f == 0:
                    continue
                start = <Py_ssize_t>pivots[i]
                for j in range(start, ncols):
                    row[j] = piv * row[j] - f * piv_row[j]
                g = 0
                for j in range(start, ncols):
                    if row[j]:
                        g = gcd(g, row[j])
                if g > 1:
                    for j in range(start, ncols):
                        row[j] //= g
    return pivots
