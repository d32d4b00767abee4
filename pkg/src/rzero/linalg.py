"""Exact integer and field linear algebra.

Integer matrices are plain lists of lists of Python ints; field matrices use
Fraction entries (characteristic 0) or ints reduced mod p.  The Smith normal
form drives everything on the integer side: kernels, linear Diophantine
solving, and presentations of finitely generated abelian groups.  Pivots are
chosen by minimal absolute value (ties by position) to limit entry growth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

IntMatrix = list[list[int]]
IntVector = list[int]


# ---------------------------------------------------------------------------
# basic integer matrix helpers
# ---------------------------------------------------------------------------

def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(a[0])
    if inner != len(b):
        raise ValueError("dimension mismatch in mat_mul")
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        out_row = out[i]
        for k, aik in enumerate(row):
            if aik == 0:
                continue
            brow = b[k]
            for j in range(cols):
                out_row[j] += aik * brow[j]
    return out


def mat_vec(a: IntMatrix, v: IntVector) -> IntVector:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch in mat_vec")
    return [sum(aij * vj for aij, vj in zip(row, v)) for row in a]


def transpose(a: IntMatrix) -> IntMatrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def columns(a: IntMatrix) -> list[IntVector]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def from_columns(cols: list[IntVector], rows: int) -> IntMatrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [[col[i] for col in cols] for i in range(rows)]


def int_det(a: IntMatrix) -> int:
    """Exact determinant via fraction-free elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.s[i][i] for i in range(min(len(self.s), len(self.s[0]) if self.s else 0))]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form u*m*v = s with u, v unimodular.

    The diagonal of s is nonnegative and satisfies the divisibility chain
    d1 | d2 | ... ; pivots are picked by minimal absolute value, ties broken
    by (row, column) position so the result is deterministic.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [row[:] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        # row[dst] += factor * row[src]
        arow, brow = a[src], a[dst]
        for j in range(cols):
            brow[j] += factor * arow[j]
        urow_s, urow_d = u[src], u[dst]
        for j in range(rows):
            urow_d[j] += factor * urow_s[j]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                x = row[j]
                if x != 0:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            return best
        return best

    t = 0
    while t < min(rows, cols):
        pivot = find_pivot(t)
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)

        while True:
            # Clear the pivot column.
            restart = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        # Remainder is a strictly smaller positive pivot.
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # Row and column are clear; enforce divisibility of the rest.
            offender = None
            d = a[t][t]
            for i in range(t + 1, rows):
                row = a[i]
                for j in range(t + 1, cols):
                    if row[j] % d != 0:
                        offender = (i, j)
                        break
                if offender:
                    break
            if offender is None:
                break
            add_row(offender[0], t, 1)
        t += 1

    rank = sum(1 for i in range(min(rows, cols)) if a[i][i] != 0)
    return SmithForm(a, u, v, rank)


class SmithSolver:
    """Cached Smith form of one matrix for solving many systems m x = b."""

    def __init__(self, m: IntMatrix):
        self.rows = len(m)
        self.cols = len(m[0]) if self.rows else 0
        self._snf = smith_normal_form(m) if self.cols else None

    def solve(self, b: IntVector) -> IntVector | None:
        if len(b) != self.rows:
            raise ValueError("dimension mismatch in SmithSolver.solve")
        if self.cols == 0:
            return [] if all(x == 0 for x in b) else None
        snf = self._snf
        y = mat_vec(snf.u, b)
        z = [0] * self.cols
        for i in range(self.rows):
            d = snf.s[i][i] if i < self.cols else 0
            if d != 0:
                if y[i] % d != 0:
                    return None
                z[i] = y[i] // d
            elif y[i] != 0:
                return None
        return mat_vec(snf.v, z)


def solve_integer(m: IntMatrix, b: IntVector) -> IntVector | None:
    """Some integer solution x of m x = b, or None when none exists."""
    return SmithSolver(m).solve(b)


def integer_kernel(m: IntMatrix) -> list[IntVector]:
    """Basis of the integer kernel lattice of m (a saturated sublattice)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    snf = smith_normal_form(m)
    vcols = columns(snf.v)
    return [vcols[j] for j in range(snf.rank, cols)]


def lattice_basis(vectors: list[IntVector], dim: int) -> list[IntVector]:
    """Basis of the integer lattice spanned by the given vectors.

    Uses the Smith decomposition M = U^-1 S V^-1: the column lattice of M
    equals the lattice spanned by d_i times the i-th column of U^-1.
    """
    vectors = [v for v in vectors if any(x != 0 for x in v)]
    if not vectors:
        return []
    m = from_columns(vectors, dim)
    snf = smith_normal_form(m)
    uinv = unimodular_inverse(snf.u)
    basis = []
    for i in range(snf.rank):
        d = snf.s[i][i]
        basis.append([uinv[r][i] * d for r in range(dim)])
    return basis


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (again integral)."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for row in aug:
        entries = row[n:]
        if any(e.denominator != 1 for e in entries):
            raise ValueError("matrix is not unimodular")
        out.append([int(e) for e in entries])
    return out


# ---------------------------------------------------------------------------
# field linear algebra (char 0 = rationals, char p = prime field)
# ---------------------------------------------------------------------------

def _fnorm(x, char: int):
    if char == 0:
        return Fraction(x)
    return int(x) % char


def _finv(x, char: int):
    if char == 0:
        return Fraction(1) / x
    return pow(x, char - 2, char)


def to_field_matrix(m, char: int):
    return [[_fnorm(x, char) for x in row] for row in m]


def field_mat_mul(a, b, char: int):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = [[_fnorm(0, char) for _ in range(cols)] for _ in range(len(a))]
    for i, row in enumerate(a):
        for k, aik in enumerate(row):
            if aik == 0:
                continue
            brow = b[k]
            orow = out[i]
            for j in range(cols):
                orow[j] = _fnorm(orow[j] + aik * brow[j], char)
    return out


def field_mat_vec(a, v, char: int):
    return [_fnorm(sum(x * y for x, y in zip(row, v)), char) for row in a]


def _row_echelon(m, char: int):
    """Row echelon form; returns (rows, pivot column list)."""
    work = [[_fnorm(x, char) for x in row] for row in m]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = _finv(work[r][c], char)
        work[r] = [_fnorm(x * inv, char) for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [_fnorm(x - f * y, char) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def field_rank(m, char: int) -> int:
    if not m or not m[0]:
        return 0
    _, pivots = _row_echelon(m, char)
    return len(pivots)


def field_solve(a, b, char: int):
    """Some solution of a x = b over the field, or None."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    if not aug:
        return [ _fnorm(0, char) ] * ncols if ncols else []
    work, pivots = _row_echelon(aug, char)
    x = [_fnorm(0, char)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None  # pivot in the constant column: inconsistent
        x[c] = work[r][ncols]
    return x


class FieldSolver:
    """Cached reduced row echelon of a matrix for many solves a x = b.

    Stores the row transform t with t a = r (r reduced); a solve is then one
    matrix-vector product plus a consistency check on the zero rows.
    """

    def __init__(self, a, char: int):
        self.char = char
        self.rows = len(a)
        self.cols = len(a[0]) if self.rows else 0
        work = [[_fnorm(x, char) for x in row]
                + [_fnorm(1 if i == j else 0, char) for j in range(self.rows)]
                for i, row in enumerate(a)]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if work[i][c] != 0), None)
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            inv = _finv(work[r][c], char)
            work[r] = [_fnorm(x * inv, char) for x in work[r]]
            for i in range(self.rows):
                if i != r and work[i][c] != 0:
                    f = work[i][c]
                    work[i] = [_fnorm(x - f * y, char) for x, y in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        self.rank = r
        self.pivots = pivots
        self.transform = [row[self.cols:] for row in work]

    def solve(self, b):
        if len(b) != self.rows:
            raise ValueError("dimension mismatch in FieldSolver.solve")
        b = [_fnorm(x, self.char) for x in b]
        y = [_fnorm(sum(t * bv for t, bv in zip(row, b)), self.char)
             for row in self.transform]
        for i in range(self.rank, self.rows):
            if y[i] != 0:
                return None
        x = [_fnorm(0, self.char)] * self.cols
        for r, c in enumerate(self.pivots):
            x[c] = y[r]
        return x


def field_kernel(a, char: int):
    """Basis of the kernel of a over the field (list of vectors)."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [[_fnorm(1 if i == j else 0, char) for i in range(ncols)]
                for j in range(ncols)]
    work, pivots = _row_echelon(a, char)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [_fnorm(0, char)] * ncols
        vec[fc] = _fnorm(1, char)
        for r, pc in enumerate(pivots):
            vec[pc] = _fnorm(-work[r][fc], char)
        basis.append(vec)
    return basis


class QuotientSpace:
    """F^n modulo the span of given relation vectors, with canonical coords.

    Quotient coordinates are taken at the non-pivot positions of the column
    echelon form of the relation set, so they are unique and deterministic.
    """

    def __init__(self, ambient: int, relations, char: int):
        self.ambient = ambient
        self.char = char
        echelon = []   # list of (pivot_row, vector)
        for rel in relations:
            vec = self._reduce([_fnorm(x, char) for x in rel], echelon, char)
            piv = next((i for i, x in enumerate(vec) if x != 0), None)
            if piv is None:
                continue
            inv = _finv(vec[piv], char)
            vec = [_fnorm(x * inv, char) for x in vec]
            echelon.append((piv, vec))
        echelon.sort(key=lambda item: item[0])
        self._echelon = echelon
        pivot_rows = {piv for piv, _ in echelon}
        self.coord_rows = [i for i in range(ambient) if i not in pivot_rows]
        self.dim = len(self.coord_rows)

    @staticmethod
    def _reduce(vec, echelon, char):
        for piv, basis_vec in echelon:
            if vec[piv] != 0:
                f = vec[piv]
                vec = [_fnorm(x - f * y, char) for x, y in zip(vec, basis_vec)]
        return vec

    def project(self, vec):
        """Canonical quotient coordinates of an ambient vector."""
        if len(vec) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        vec = self._reduce([_fnorm(x, self.char) for x in vec], self._echelon, self.char)
        return [vec[i] for i in self.coord_rows]

    def representative(self, j: int):
        """Ambient representative of the j-th quotient basis vector."""
        vec = [_fnorm(0, self.char)] * self.ambient
        vec[self.coord_rows[j]] = _fnorm(1, self.char)
        return vec

    def induced_matrix(self, m, target: "QuotientSpace"):
        """Matrix of an ambient-level map between two quotients."""
        fm = to_field_matrix(m, target.char)
        cols = [
            target.project(field_mat_vec(fm, self.representative(j), target.char))
            for j in range(self.dim)
        ]
        return [[cols[j][i] for j in range(self.dim)] for i in range(target.dim)]


# ---------------------------------------------------------------------------
# finitely presented abelian groups
# ---------------------------------------------------------------------------

class PresentedGroup:
    """Z^gens modulo the integer column span of a relation matrix."""

    def __init__(self, gens: int, relations: list[IntVector]):
        self.gens = gens
        for rel in relations:
            if len(rel) != gens:
                raise ValueError("relation length mismatch")
        self.relations = [list(map(int, rel)) for rel in relations]
        self._rel_matrix = from_columns(self.relations, gens)
        self._invariants = None
        self._zero_solver = None

    @property
    def relation_matrix(self) -> IntMatrix:
        return self._rel_matrix

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion divisors > 1 in divisibility order)."""
        if self._invariants is None:
            if not self.relations:
                self._invariants = (self.gens, ())
            else:
                snf = smith_normal_form(self._rel_matrix)
                diag = [d for d in snf.diagonal if d != 0]
                torsion = tuple(d for d in diag if d > 1)
                self._invariants = (self.gens - len(diag), torsion)
        return self._invariants

    @property
    def free_rank(self) -> int:
        return self.invariants()[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants()[1]

    def is_trivial(self) -> bool:
        free, tors = self.invariants()
        return free == 0 and not tors

    def is_zero_class(self, vec: IntVector) -> bool:
        if len(vec) != self.gens:
            raise ValueError("coordinate length mismatch")
        if all(x == 0 for x in vec):
            return True
        if not self.relations:
            return False
        if self._zero_solver is None:
            self._zero_solver = SmithSolver(self._rel_matrix)
        return self._zero_solver.solve(list(vec)) is not None

    def classes_equal(self, a: IntVector, b: IntVector) -> bool:
        return self.is_zero_class([x - y for x, y in zip(a, b)])

    def tensor(self, char: int) -> QuotientSpace:
        """The group tensored with F: a quotient vector space over F.

        char 0 keeps only the free part; char p also keeps Z/p^k summands.
        """
        return QuotientSpace(self.gens, self.relations, char)

    # -- SNF-normalized coordinates (deterministic reporting basis) --------

    def _normal_data(self):
        if not hasattr(self, "_normal_cache"):
            if not self.relations:
                u = identity(self.gens)
                diag = [0] * self.gens
            else:
                snf = smith_normal_form(self._rel_matrix)
                u = snf.u
                diag = [0] * self.gens
                for i in range(min(self.gens, len(self.relations))):
                    diag[i] = snf.s[i][i]
            free = [i for i in range(self.gens) if diag[i] == 0]
            torsion = [(i, diag[i]) for i in range(self.gens) if diag[i] > 1]
            self._normal_cache = (u, unimodular_inverse(u), free, torsion)
        return self._normal_cache

    def normal_basis_size(self) -> int:
        _, _, free, torsion = self._normal_data()
        return len(free) + len(torsion)

    def normalized_coords(self, vec: IntVector) -> list[int]:
        """Coordinates in the SNF basis: free entries, then torsion entries
        reduced mod their divisors.  Canonical for each class."""
        u, _, free, torsion = self._normal_data()
        y = mat_vec(u, list(vec))
        return [y[i] for i in free] + [y[i] % d for i, d in torsion]

    def normalized_representative(self, j: int) -> IntVector:
        """Generator coordinates of the j-th normalized basis vector."""
        _, uinv, free, torsion = self._normal_data()
        index = (free + [i for i, _ in torsion])[j]
        return [uinv[r][index] for r in range(self.gens)]


def solve_modulo(span: list[IntVector], group: PresentedGroup, target: IntVector) -> IntVector | None:
    """Coefficients a with sum a_i span_i = target modulo group relations.

    Returns None when target is not in the subgroup generated by span.
    """
    gens = group.gens
    if len(target) != gens:
        raise ValueError("target length mismatch")
    cols = [list(v) for v in span] + [list(r) for r in group.relations]
    matrix = from_columns(cols, gens)
    sol = solve_integer(matrix, list(target))
    if sol is None:
        return None
    return sol[: len(span)]


def subgroup_presentation(span: list[IntVector], group: PresentedGroup):
    """Present the subgroup of `group` generated by `span` classes.

    Returns (generators, presented) where generators are ambient coordinate
    vectors (one per abstract generator) and `presented` is the subgroup as an
    abstract PresentedGroup: relations are all integer combinations of the
    generators that land in the relation lattice of the ambient group.
    """
    t = len(span)
    gens = group.gens
    if t == 0:
        return [], PresentedGroup(0, [])
    cols = [list(v) for v in span] + [list(r) for r in group.relations]
    matrix = from_columns(cols, gens)
    kernel = integer_kernel(matrix)
    relations = [vec[:t] for vec in kernel]
    relations = [rel for rel in relations if any(x != 0 for x in rel)]
    return [list(v) for v in span], PresentedGroup(t, relations)
