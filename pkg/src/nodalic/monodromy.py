"""Stalk cohomology of the middle extension at a nodal degeneration.

Input is linear-algebra data only: the skew intersection pairing on the
middle cohomology of a nearby smooth section, one vanishing cycle per
node, and the rank of the constant part coming from the ambient space.
Each cycle v gives a rank-one nilpotent x -> sign*<x, v>*v (the
logarithm of the local monodromy transvection); products of these
operators span the terms of a complex whose cohomology is the stalk of
the middle extension.  Because disjoint spheres have orthogonal classes,
all products of length two or more vanish and the answer collapses to
two numbers, which this module also derives in closed form and checks
against the complex.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import InputError, PreconditionError, check_int

FAIL_SKEW = "pairing not skew"
FAIL_DEGENERATE = "pairing degenerate"
FAIL_ZERO_CYCLE = "zero vanishing cycle unsupported"
FAIL_ORTHOGONALITY = "vanishing cycles not pairwise orthogonal"
FAIL_COMMUTING = "monodromy logarithms do not commute"


def _freeze(rows):
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class MonodromyData:
    """Vanishing-cycle presentation of a nodal degeneration.

    ``dim`` is the rank of the middle cohomology of the nearby fiber,
    ``pairing`` the intersection form on it, ``cycles`` one class per
    node, ``h_ambient`` the rank of the constant ambient system, and
    ``fiber_dim`` optional odd documentation of the fiber dimension.
    Construction checks shapes only; the semantic invariants are the
    business of :func:`validate`.
    """

    dim: int
    pairing: tuple
    cycles: tuple
    h_ambient: int
    fiber_dim: int | None = None

    def __post_init__(self):
        check_int(self.dim, "dim", minimum=0)
        check_int(self.h_ambient, "h_ambient", minimum=0)
        if self.fiber_dim is not None:
            check_int(self.fiber_dim, "fiber_dim", minimum=1)
            if self.fiber_dim % 2 == 0:
                raise InputError(f"fiber_dim must be odd, got {self.fiber_dim}")
        rows, _ = linalg.check_matrix(list(self.pairing), self.dim)
        if len(rows) != self.dim:
            raise InputError(
                f"pairing has {len(rows)} rows, expected {self.dim}"
            )
        cycles = []
        for i, cycle in enumerate(self.cycles):
            if not isinstance(cycle, (list, tuple)):
                raise InputError(f"cycle {i} is not a vector")
            if len(cycle) != self.dim:
                raise InputError(
                    f"cycle {i} has length {len(cycle)}, expected {self.dim}"
                )
            cycles.append([linalg.as_rational(x) for x in cycle])
        object.__setattr__(self, "pairing", _freeze(rows))
        object.__setattr__(self, "cycles", _freeze(cycles))

    @property
    def delta(self):
        return len(self.cycles)

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("a monodromy document must be a JSON object")
        required = {"dim", "pairing", "cycles", "h_ambient"}
        allowed = required | {"fiber_dim"}
        if not required <= set(obj) or not set(obj) <= allowed:
            raise InputError(
                'monodromy document needs the keys "dim", "pairing", '
                '"cycles", "h_ambient" and optionally "fiber_dim"'
            )
        dim = obj["dim"]
        check_int(dim, "dim", minimum=0)
        pairing = linalg.parse_matrix(obj["pairing"], dim)
        raw_cycles = obj["cycles"]
        if not isinstance(raw_cycles, list):
            raise InputError('"cycles" must be an array of vectors')
        cycles = []
        for i, vec in enumerate(raw_cycles):
            if not isinstance(vec, list):
                raise InputError(f"cycle {i} is not an array")
            cycles.append([linalg.parse_rational(x) for x in vec])
        return cls(
            dim=dim,
            pairing=tuple(tuple(r) for r in pairing),
            cycles=tuple(tuple(c) for c in cycles),
            h_ambient=obj["h_ambient"],
            fiber_dim=obj.get("fiber_dim"),
        )


def _pair(pairing, x, y):
    """Value of the intersection form: x^T * pairing * y."""
    total = Fraction(0)
    for a, row in zip(x, pairing):
        if a:
            total += a * sum(j * b for j, b in zip(row, y))
    return total


def _functional(pairing, cycle):
    # row vector of <., cycle>: entry i is (pairing @ cycle)[i]
    return [sum(row[j] * cycle[j] for j in range(len(cycle))) for row in pairing]


def _log_matrix(pairing, cycle, sign):
    # x -> sign * <x, v> * v ; as a matrix: sign * v * (pairing @ v)^T
    functional = _functional(pairing, cycle)
    return [[sign * a * f for f in functional] for a in cycle]


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _rank_one_products_commute(vs, fs):
    """Pairwise commutativity of the operators outer(v_i, f_i).

    Each product of two is again scalar times an outer product, so the
    matrix identity N_i N_j = N_j N_i reduces to comparing
    (f_i.v_j) v_i f_j^T with (f_j.v_i) v_j f_i^T entry by entry; the
    overall sign squares away.
    """
    for i, j in combinations(range(len(vs)), 2):
        a = _dot(fs[i], vs[j])
        b = _dot(fs[j], vs[i])
        if a == 0 and b == 0:
            continue
        for x in range(len(vs[i])):
            for y in range(len(fs[j])):
                if a * vs[i][x] * fs[j][y] != b * vs[j][x] * fs[i][y]:
                    return False
    return True


def _is_skew(pairing):
    m = len(pairing)
    return all(pairing[i][j] == -pairing[j][i] for i in range(m) for j in range(i, m))


@dataclass(frozen=True)
class PLOperator:
    """Logarithm of the local monodromy around one node."""

    index: int
    matrix: tuple


def pl_operator(pairing, cycle, sign, index=0):
    """Rank-one nilpotent x -> sign*<x, cycle>*cycle for a skew pairing.

    ``sign`` must be +1 or -1; the choice never changes any dimension
    reported downstream.  A zero cycle is allowed here (zero operator)
    and rejected later by validate.
    """
    rows, m = linalg.check_matrix(list(pairing))
    if len(rows) != m:
        raise InputError(f"pairing must be square, got {len(rows)}x{m}")
    if not isinstance(cycle, (list, tuple)) or len(cycle) != m:
        raise InputError(f"cycle must be a vector of length {m}")
    vec = [linalg.as_rational(x) for x in cycle]
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign!r}")
    check_int(index, "index", minimum=0)
    if not _is_skew(rows):
        raise PreconditionError(FAIL_SKEW)
    return PLOperator(index=index, matrix=_freeze(_log_matrix(rows, vec, sign)))


def transvection(op):
    """The monodromy itself, identity plus the logarithm.

    The logarithm must square to zero; per the surface contract this is
    classified as an input error.
    """
    if not isinstance(op, PLOperator):
        raise InputError("transvection expects a PLOperator")
    n = [list(row) for row in op.matrix]
    m = len(n)
    square = linalg.matmul(n, n)
    if any(any(x != 0 for x in row) for row in square):
        raise InputError("operator does not square to zero")
    out = [list(row) for row in n]
    for i in range(m):
        out[i][i] += 1
    return out


@dataclass(frozen=True)
class Diagnostics:
    """Pass/fail record for every semantic invariant of MonodromyData."""

    skew: bool
    nondegenerate: bool
    cycles_nonzero: bool
    pairwise_orthogonal: bool
    logs_commute: bool
    failures: tuple

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {
            "skew": self.skew,
            "nondegenerate": self.nondegenerate,
            "cycles_nonzero": self.cycles_nonzero,
            "pairwise_orthogonal": self.pairwise_orthogonal,
            "logs_commute": self.logs_commute,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def validate(data):
    """Check every invariant and report diagnostics; never raises."""
    if not isinstance(data, MonodromyData):
        raise InputError("validate expects MonodromyData")
    pairing = [list(row) for row in data.pairing]
    skew = _is_skew(pairing)
    nondegenerate = (
        data.dim == 0 or linalg.rank(pairing, data.dim) == data.dim
    )
    cycles_nonzero = all(any(x != 0 for x in c) for c in data.cycles)
    orthogonal = all(
        _pair(pairing, list(a), list(b)) == 0
        for a, b in combinations(data.cycles, 2)
    )
    vs = [list(c) for c in data.cycles]
    fs = [_functional(pairing, v) for v in vs]
    commute = _rank_one_products_commute(vs, fs)
    failures = []
    if not skew:
        failures.append(FAIL_SKEW)
    if not nondegenerate:
        failures.append(FAIL_DEGENERATE)
    if not cycles_nonzero:
        failures.append(FAIL_ZERO_CYCLE)
    if not orthogonal:
        failures.append(FAIL_ORTHOGONALITY)
    if not commute:
        failures.append(FAIL_COMMUTING)
    return Diagnostics(
        skew=skew,
        nondegenerate=nondegenerate,
        cycles_nonzero=cycles_nonzero,
        pairwise_orthogonal=orthogonal,
        logs_commute=commute,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class StalkComplex:
    """Complex of images of products of the monodromy logarithms.

    Degree p collects one summand per strictly increasing index tuple of
    length p; its basis matrix (columns spanning the image of the
    corresponding product) fixes the coordinates in which the
    differential blocks are written.  ``differentials[p]`` maps degree p
    to degree p+1; ``dims[p]`` is the total dimension of degree p.
    """

    dim: int
    summands: tuple
    differentials: tuple
    dims: tuple

    @property
    def degrees(self):
        return tuple(range(len(self.summands)))


def _rank_one_column_basis(m, info, vs, fs):
    """Pivot-column basis of the product matrix scalar * outer(v, f).

    Matches ``linalg.column_space_basis`` on the explicit matrix: the
    chosen column is the first nonzero one, which is the first nonzero
    entry of f, and the basis column is the matrix column sitting there.
    """
    scalar, first, last = info
    v = vs[first]
    f = fs[last]
    if scalar == 0 or all(x == 0 for x in v):
        return [[] for _ in range(m)]
    lead = None
    for entry in f:
        if entry != 0:
            lead = entry
            break
    if lead is None:
        return [[] for _ in range(m)]
    return [[scalar * lead * x] for x in v]


def _column_coordinates(basis, images, width):
    """Coordinates of ``images`` columns in ``basis`` columns.

    ``basis`` is dim x r with independent columns; every image column
    must lie in their span, anything else means the complex's summands
    were assembled from non-commuting operators.
    """
    r = len(basis[0]) if basis else 0
    if r == 0:
        if any(any(x != 0 for x in row) for row in images):
            raise PreconditionError(FAIL_COMMUTING)
        return []
    aug = [list(brow) + list(irow) for brow, irow in zip(basis, images)]
    reduced, rank, _ = linalg.rref(aug, r + width)
    # independent basis columns are always pivots, so any extra rank
    # means an image column escaped the span
    if rank != r:
        raise PreconditionError(FAIL_COMMUTING)
    return [row[r:] for row in reduced[:r]]


def build_stalk_complex(data, sign=-1):
    """Assemble the complex from the data's monodromy logarithms.

    Requires the logarithms to commute pairwise (orthogonal cycles
    guarantee it); nothing else is assumed, so the vanishing of all
    degrees >= 2 comes out of the computation instead of being wired in.
    """
    if not isinstance(data, MonodromyData):
        raise InputError("build_stalk_complex expects MonodromyData")
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign!r}")
    m = data.dim
    delta = data.delta
    pairing = [list(row) for row in data.pairing]
    vs = [list(c) for c in data.cycles]
    fs = [_functional(pairing, v) for v in vs]
    if not _rank_one_products_commute(vs, fs):
        raise PreconditionError(FAIL_COMMUTING)

    sgn = Fraction(sign)

    def apply_log(i, vec):
        # N_i vec = sign * (f_i . vec) * v_i
        scale = sgn * _dot(fs[i], vec)
        return [scale * x for x in vs[i]]

    # Every product of the rank-one logs is scalar * outer(v_first,
    # f_last), so only (scalar, first, last) is tracked per index tuple;
    # the bases read off it equal column_space_basis of the full product
    # (tests compare against the explicit matrices).
    rank_one = {}
    identity = linalg.identity(m)
    summands = []
    for p in range(delta + 1):
        level = []
        for idx in combinations(range(delta), p):
            if p == 0:
                basis = identity
            else:
                if p == 1:
                    info = (sgn, idx[0], idx[0])
                else:
                    scalar, first, last = rank_one[idx[1:]]
                    info = (
                        sgn * scalar * _dot(fs[idx[0]], vs[first]),
                        idx[0],
                        last,
                    )
                rank_one[idx] = info
                basis = _rank_one_column_basis(m, info, vs, fs)
            level.append((idx, _freeze(basis)))
        summands.append(tuple(level))

    dims = []
    offsets = []
    for level in summands:
        level_offsets = {}
        total = 0
        for idx, basis in level:
            level_offsets[idx] = total
            total += len(basis[0]) if basis else 0
        offsets.append(level_offsets)
        dims.append(total)

    differentials = []
    for p in range(delta):
        rows = dims[p + 1]
        cols = dims[p]
        d = [[Fraction(0)] * cols for _ in range(rows)]
        source_pos = {idx: k for k, (idx, _) in enumerate(summands[p])}
        for idx, basis in summands[p + 1]:
            r_target = len(basis[0]) if basis else 0
            if r_target == 0:
                continue
            row0 = offsets[p + 1][idx]
            for l, dropped in enumerate(idx):
                rest = idx[:l] + idx[l + 1 :]
                src_basis = summands[p][source_pos[rest]][1]
                r_source = len(src_basis[0]) if src_basis else 0
                if r_source == 0:
                    continue
                col0 = offsets[p][rest]
                image_cols = [
                    apply_log(dropped, [src_basis[x][b] for x in range(m)])
                    for b in range(r_source)
                ]
                image = [
                    [image_cols[b][x] for b in range(r_source)] for x in range(m)
                ]
                block = _column_coordinates(
                    [list(r) for r in basis], image, r_source
                )
                factor = 1 if l % 2 == 0 else -1
                for a in range(r_target):
                    for b in range(r_source):
                        d[row0 + a][col0 + b] += factor * block[a][b]
        differentials.append(_freeze(d))

    return StalkComplex(
        dim=m,
        summands=tuple(summands),
        differentials=tuple(differentials),
        dims=tuple(dims),
    )


def complex_cohomology(complex_):
    """Cohomology dimensions in every degree, after checking d∘d = 0."""
    if not isinstance(complex_, StalkComplex):
        raise InputError("complex_cohomology expects a StalkComplex")
    dims = complex_.dims
    top = len(dims) - 1
    ranks = []
    for p, diff in enumerate(complex_.differentials):
        rows = [list(r) for r in diff]
        ranks.append(linalg.rank(rows, dims[p]) if rows else 0)
    for p in range(len(complex_.differentials) - 1):
        a = [list(r) for r in complex_.differentials[p + 1]]
        b = [list(r) for r in complex_.differentials[p]]
        if not a or not b:
            continue
        product = linalg.matmul(a, b)
        if any(any(x != 0 for x in row) for row in product):
            raise PreconditionError("differentials do not compose to zero")
    out = []
    for p in range(top + 1):
        rank_out = ranks[p] if p < len(ranks) else 0
        rank_in = ranks[p - 1] if p >= 1 else 0
        out.append(dims[p] - rank_out - rank_in)
    return out


def span_dim(data):
    """Dimension of the linear span of the vanishing cycles."""
    if not isinstance(data, MonodromyData):
        raise InputError("span_dim expects MonodromyData")
    if not data.cycles:
        return 0
    return linalg.rank([list(c) for c in data.cycles], data.dim)


def excision_rank(data):
    """Rank of the pairing-against-every-cycle map out of the fiber.

    Row i is the functional <., v_i>; with a nondegenerate pairing the
    rank equals the span dimension of the cycles, which the test suite
    checks as the excision bookkeeping identity.
    """
    _require_valid(data)
    if not data.cycles:
        return 0
    pairing = [list(row) for row in data.pairing]
    rows = []
    for cycle in data.cycles:
        rows.append(
            [
                sum(pairing[i][j] * cycle[j] for j in range(data.dim))
                for i in range(data.dim)
            ]
        )
    return linalg.rank(rows, data.dim)


@dataclass(frozen=True)
class IcStalkReport:
    """Stalk dimensions plus the bookkeeping derived from them."""

    h0: int
    h1: int
    higher: tuple
    span_dim: int
    excision_rank: int
    h_top_singular: int
    defect: int
    filtration: tuple

    def to_json(self):
        return {
            "h0": self.h0,
            "h1": self.h1,
            "higher": list(self.higher),
            "span_dim": self.span_dim,
            "excision_rank": self.excision_rank,
            "h_top_singular": self.h_top_singular,
            "defect": self.defect,
            "filtration": list(self.filtration),
        }


def _require_valid(data):
    if not isinstance(data, MonodromyData):
        raise InputError("expected MonodromyData")
    diagnostics = validate(data)
    if not diagnostics.passed:
        raise PreconditionError(diagnostics.failures[0])
    return diagnostics


def ic_stalk(data, sign=-1):
    """Full stalk report for validated monodromy data.

    The dimensions are computed twice, in closed form from the cycle
    span and by taking cohomology of the assembled complex, and the two
    must agree; disagreement is raised rather than papered over.
    """
    _require_valid(data)
    s = span_dim(data)
    cohomology = complex_cohomology(build_stalk_complex(data, sign))
    h0 = data.dim - s
    h1 = data.delta - s
    higher = tuple(cohomology[2:])
    complex_h1 = cohomology[1] if len(cohomology) > 1 else 0
    if cohomology[0] != h0 or complex_h1 != h1 or any(higher):
        raise PreconditionError(
            "closed-form and complex stalk computations disagree: "
            f"closed (h0={h0}, h1={h1}), complex {cohomology}"
        )
    h_top = data.h_ambient + h1
    return IcStalkReport(
        h0=h0,
        h1=h1,
        higher=higher,
        span_dim=s,
        excision_rank=excision_rank(data),
        h_top_singular=h_top,
        defect=h1,
        filtration=(h1, data.h_ambient),
    )


@dataclass(frozen=True)
class PerverseFiltration:
    """Graded pieces of the two-step filtration on the top cohomology."""

    negative_piece: int
    graded_0: int
    graded_1: int
    total: int

    def to_json(self):
        return {
            "negative_piece": self.negative_piece,
            "graded_0": self.graded_0,
            "graded_1": self.graded_1,
            "total": self.total,
        }


def perverse_filtration(report):
    """Read the filtration off a stalk report: (0, defect, ambient rank)."""
    if not isinstance(report, IcStalkReport):
        raise InputError("perverse_filtration expects an IcStalkReport")
    graded_0, graded_1 = report.filtration
    return PerverseFiltration(
        negative_piece=0,
        graded_0=graded_0,
        graded_1=graded_1,
        total=report.h_top_singular,
    )
