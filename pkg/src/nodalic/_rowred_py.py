"""Fraction-free row reduction over arbitrary-precision integers.

Pure-Python fallback for the compiled kernel in ``_rowred_cy``; the two
implement the identical algorithm and must produce identical output
(``nodalic.linalg`` selects whichever imports, tests compare both).

The forward pass is Bareiss elimination: every update
``row[j] = (piv * row[j] - f * piv_row[j]) // prev`` divides exactly, and
intermediate entries stay bounded by minors of the input.  The optional
backward pass clears entries above the pivots in integer arithmetic with
a per-row gcd reduction, leaving each row an integer multiple of the
corresponding row of the canonical reduced echelon form.
"""

from math import gcd

BACKEND = "python"


def reduce_int_rows(rows, ncols, reduced=True):
    """Row-reduce ``rows`` (lists of ints, length ``ncols``) in place.

    Returns the list of pivot columns.  After the call, row ``i`` for
    ``i < len(pivots)`` equals ``rows[i][pivots[i]]`` times the canonical
    reduced-echelon row when ``reduced`` is true; remaining rows are zero.
    With ``reduced=False`` only the forward pass runs (enough for rank
    and pivot columns).
    """
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            for j in range(c, ncols):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1

    if reduced:
        for k in range(len(pivots) - 1, 0, -1):
            c = pivots[k]
            piv_row = rows[k]
            piv = piv_row[c]
            for i in range(k):
                row = rows[i]
                f = row[c]
                if f == 0:
                    continue
                start = pivots[i]
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
