"""Exact linear algebra over the rationals.

Matrices are lists of rows, rows are lists of :class:`fractions.Fraction`
(plain ints are accepted anywhere and widened; floats and bools are
rejected because they silently break exactness).  All reductions funnel
through one integer kernel, fraction-free Bareiss elimination, compiled
when the extension built (``nodalic._rowred_cy``) and pure Python
otherwise.  Both backends run the same algorithm with the same pivoting
rule, first nonzero entry in column order, so every result here is a
deterministic function of the input alone.

Set ``NODALIC_PURE_PYTHON=1`` to force the pure backend; the active one
is reported by :func:`kernel_backend`.
"""

import os
import re
from fractions import Fraction
from math import lcm

from .errors import InputError, PreconditionError

if os.environ.get("NODALIC_PURE_PYTHON", "") not in ("", "0"):
    from . import _rowred_py as _kernel
else:
    try:
        from . import _rowred_cy as _kernel
    except ImportError:
        from . import _rowred_py as _kernel


def kernel_backend():
    """Name of the row-reduction backend in use: "cython" or "python"."""
    return _kernel.BACKEND


def as_rational(value):
    """Coerce ``value`` to Fraction, accepting only exact types."""
    if isinstance(value, Fraction):
        return value
    # bool passes isinstance(int) but 2 + True is never what a caller meant
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise InputError(
        f"expected an int or Fraction, got {type(value).__name__}: {value!r}"
    )


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value):
    """Parse a JSON-level scalar: a plain int or an "a/b" string.

    Floats are rejected rather than converted; a binary float is almost
    never the rational the author meant, and exactness is the contract.
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise InputError(f"not a rational literal: {value!r}")
        num, _, den = value.partition("/")
        if den:
            if int(den) == 0:
                raise InputError(f"zero denominator: {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    raise InputError(
        f"expected an integer or \"a/b\" string, got {type(value).__name__}: {value!r}"
    )


def rational_to_json(value):
    """Canonical JSON form: bare int when integral, else "a/b" string."""
    value = as_rational(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_matrix(obj, ncols=None):
    """Parse a JSON array-of-arrays of rational literals into rows."""
    if not isinstance(obj, list):
        raise InputError("matrix must be a JSON array of rows")
    parsed = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise InputError(f"row {i} is not an array")
        parsed.append([parse_rational(x) for x in row])
    rows, _ = check_matrix(parsed, ncols)
    return rows


def check_matrix(matrix, ncols=None):
    """Validate shape, return (fraction_rows, ncols).

    ``ncols`` must be supplied when ``matrix`` has no rows and is checked
    against the row length otherwise.
    """
    if not isinstance(matrix, (list, tuple)):
        raise InputError(f"matrix must be a list of rows, got {type(matrix).__name__}")
    rows = []
    width = ncols
    for i, row in enumerate(matrix):
        if not isinstance(row, (list, tuple)):
            raise InputError(f"row {i} is not a list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"row {i} has {len(row)} entries, expected {width}")
        rows.append([as_rational(x) for x in row])
    if width is None:
        raise InputError("cannot infer the column count of a matrix with no rows")
    return rows, width


def _int_rows(rows):
    """Scale each row by the lcm of its denominators; keeps the row space."""
    out = []
    for row in rows:
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        out.append([int(x * m) for x in row])
    return out


def rref(matrix, ncols=None):
    """Reduced row echelon form.

    Returns ``(reduced, rank, pivot_columns)`` where ``reduced`` has the
    same shape as the input.  The reduced form is the canonical one
    (pivots equal to 1, zeros above and below), so equal row spaces give
    equal output.
    """
    rows, width = check_matrix(matrix, ncols)
    work = _int_rows(rows)
    pivots = _kernel.reduce_int_rows(work, width, True)
    reduced = []
    for i, c in enumerate(pivots):
        piv = work[i][c]
        reduced.append([Fraction(v, piv) for v in work[i]])
    zero = [Fraction(0)] * width
    for _ in range(len(rows) - len(pivots)):
        reduced.append(list(zero))
    return reduced, len(pivots), pivots


def rank(matrix, ncols=None):
    """Rank over the rationals (forward elimination only)."""
    rows, width = check_matrix(matrix, ncols)
    work = _int_rows(rows)
    return len(_kernel.reduce_int_rows(work, width, False))


def int_matrix_rank(rows, ncols):
    """Rank of a matrix that is already integer, without copying overhead.

    ``rows`` must be lists of plain ints; they are copied once, so the
    caller's data is untouched.
    """
    work = [list(r) for r in rows]
    return len(_kernel.reduce_int_rows(work, ncols, False))


def kernel_vectors(matrix, ncols=None):
    """Basis of the right null space as a list of vectors.

    One vector per free column, ordered by that column's index and
    normalized so the free coordinate is 1; together with canonical rref
    this makes the basis deterministic.
    """
    reduced, _, pivots = rref(matrix, ncols)
    width = len(reduced[0]) if reduced else ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * width
        vec[free] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -reduced[i][free]
        basis.append(vec)
    return basis


def kernel_basis(matrix, ncols=None):
    """Null space basis as a matrix, one basis vector per column.

    Shape is cols x (cols - rank); a full-rank matrix gives a matrix
    with zero columns.
    """
    rows, width = check_matrix(matrix, ncols)
    vectors = kernel_vectors(rows, width)
    return [[vec[r] for vec in vectors] for r in range(width)]


def column_space_basis(matrix, ncols=None):
    """Matrix whose columns are the pivot columns of the input.

    The selected columns are linearly independent, span the column
    space, and keep their input order, so the choice is deterministic.
    """
    rows, width = check_matrix(matrix, ncols)
    work = _int_rows(rows)
    pivots = _kernel.reduce_int_rows(work, width, False)
    return [[row[c] for c in pivots] for row in rows]


def matmul(a, b):
    """Exact matrix product; inner dimensions must agree."""
    arows, an = check_matrix(a)
    brows, bn = check_matrix(b, None if b else an)
    if len(brows) != an:
        raise InputError(f"cannot multiply {len(arows)}x{an} by {len(brows)}x{bn}")
    bt = list(zip(*brows)) if brows else []
    return [
        [sum(x * y for x, y in zip(row, col)) for col in bt]
        for row in arows
    ]


def transpose(matrix, ncols=None):
    rows, width = check_matrix(matrix, ncols)
    return [[row[c] for row in rows] for c in range(width)]


def identity(n):
    return [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]


def solve_exact(a, b):
    """Solve ``a @ x = b`` for square invertible ``a``; ``b`` is a matrix.

    Raises :class:`PreconditionError` when ``a`` is not invertible, since
    the caller asserted a unique solution exists.
    """
    arows, n = check_matrix(a)
    if len(arows) != n:
        raise InputError(f"coefficient matrix must be square, got {len(arows)}x{n}")
    brows, bw = check_matrix(b)
    if len(brows) != n:
        raise InputError(f"right-hand side has {len(brows)} rows, expected {n}")
    aug = [arows[i] + brows[i] for i in range(n)]
    reduced, _, pivots = rref(aug, n + bw)
    if pivots != list(range(n)):
        raise PreconditionError("matrix is singular, no unique solution")
    return [row[n:] for row in reduced[:n]]
