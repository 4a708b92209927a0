"""Exact linear algebra over the rationals.

Ranks, kernels and positivity feasibility here back integer-valued claims
(deficiencies, independence of decompositions, conservativity), where a
floating-point tolerance could flip a verdict. All routines therefore work
on `fractions.Fraction` entries and refuse floats outright; callers that
hold float data must decide for themselves how to rationalize it.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce ints, Fractions, or strings like '3/2' to Fraction."""
    if isinstance(value, float):
        raise TypeError(f"refusing to coerce float {value!r} to an exact rational")
    return Fraction(value)


def matrix(rows) -> Matrix:
    out = [[frac(v) for v in row] for row in rows]
    if out:
        width = len(out[0])
        if any(len(row) != width for row in out):
            raise ValueError("ragged matrix")
    return out


def transpose(mat: Matrix) -> Matrix:
    return [list(col) for col in zip(*mat)] if mat else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (on a copy) and the pivot column indices."""
    m = [row[:] for row in mat]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(mat) -> int:
    """Exact rank over the rationals."""
    m = matrix(mat)
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(mat) -> list[Vector]:
    """Basis of the right kernel {v : mat v = 0}."""
    m = matrix(mat)
    if not m:
        raise ValueError("nullspace of an empty matrix is ambiguous")
    n_cols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * n_cols
        v[fc] = _ONE
        for row_idx, pc in enumerate(pivots):
            v[pc] = -red[row_idx][fc]
        basis.append(v)
    return basis


def column_basis(mat) -> list[Vector]:
    """Columns of `mat` at the pivot positions: a basis of the column space."""
    m = matrix(mat)
    if not m:
        return []
    _, pivots = rref(m)
    cols = transpose(m)
    return [cols[c] for c in pivots]


def row_basis(mat) -> list[Vector]:
    """Nonzero rows of the reduced row echelon form: a basis of the row space."""
    m = matrix(mat)
    if not m:
        return []
    red, pivots = rref(m)
    return [red[i] for i in range(len(pivots))]


def in_span(vectors: list, v) -> bool:
    """Whether v lies in the span of the given vectors (all as rows)."""
    base = matrix(vectors) if vectors else []
    vec = [frac(x) for x in v]
    if not base:
        return all(x == 0 for x in vec)
    return rank(base) == rank(base + [vec])


def spans_equal(a: list, b: list) -> bool:
    """Whether two row-vector lists span the same subspace."""
    ma = matrix(a) if a else []
    mb = matrix(b) if b else []
    ra = rank(ma) if ma else 0
    rb = rank(mb) if mb else 0
    if ra != rb:
        return False
    return rank(ma + mb) == ra


def orthogonal_complement(vectors: list, dim: int) -> list[Vector]:
    """Basis of {w in Q^dim : w . v = 0 for every given row vector v}."""
    if not vectors:
        return [[_ONE if i == j else _ZERO for j in range(dim)] for i in range(dim)]
    m = matrix(vectors)
    if len(m[0]) != dim:
        raise ValueError("dimension mismatch")
    return nullspace(m)


def _phase1_feasible(a: Matrix, b: Vector) -> Vector | None:
    """Solve A u = b with u >= 0 via a phase-1 simplex (Bland's rule).

    Returns one feasible u, or None. Exact arithmetic throughout; Bland's
    pivoting rule guarantees termination.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    if n_rows == 0:
        return []
    # Tableau [A | I | b] with b >= 0; artificial variable i is column n_cols+i.
    tab: Matrix = []
    for i in range(n_rows):
        row = list(a[i])
        rhs = b[i]
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        row.extend(_ONE if j == i else _ZERO for j in range(n_rows))
        row.append(rhs)
        tab.append(row)
    basis = [n_cols + i for i in range(n_rows)]
    total = n_cols + n_rows
    # Reduced-cost row for min(sum of artificials): z_j = sum_i tab[i][j] while
    # every basic variable is artificial; kept in sync under pivots below.
    z = [sum(tab[i][j] for i in range(n_rows)) for j in range(total + 1)]
    while True:
        enter = next((j for j in range(n_cols) if z[j] > 0), None)
        if enter is None:
            break
        ratios = [
            (tab[i][total] / tab[i][enter], basis[i], i)
            for i in range(n_rows)
            if tab[i][enter] > 0
        ]
        if not ratios:
            return None  # unbounded phase-1 cannot happen, but stay safe
        _, _, leave = min(ratios)
        pv = tab[leave][enter]
        tab[leave] = [v / pv for v in tab[leave]]
        for i in range(n_rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter
    if z[total] != 0:
        return None
    u = [_ZERO] * n_cols
    for i, var in enumerate(basis):
        if var < n_cols:
            u[var] = tab[i][total]
    return u


def positive_kernel_vector(mat) -> Vector | None:
    """A strictly positive z with mat z = 0, or None if none exists.

    Positivity is scale invariant, so it suffices to search z >= 1;
    substituting z = 1 + u reduces the question to phase-1 feasibility of
    A u = -A 1 with u >= 0.
    """
    m = matrix(mat)
    if not m:
        raise ValueError("positive kernel of an empty matrix is ambiguous")
    n_cols = len(m[0])
    if n_cols == 0:
        return None
    b = [-sum(row) for row in m]
    u = _phase1_feasible(m, b)
    if u is None:
        return None
    z = [v + 1 for v in u]
    assert all(sum(r * x for r, x in zip(row, z)) == 0 for row in m)
    return z
