"""Dense exact linear algebra over the rationals and the integers.

Everything downstream (spectral differentials, Koszul complexes, cone
feasibility) reduces to the routines in this module, so it stays small,
dense and exact.  Rational matrices hold ``fractions.Fraction`` entries,
integer matrices hold Python ints; both are immutable after construction
and safe to share between threads.

Graded bases are fixed once and for all: exterior bases are the strictly
increasing index tuples, tensor bases the arbitrary index tuples, each
family in lexicographic order.  Every matrix of a graded map produced
here is stated in these bases, which keeps fixtures bit-reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"2/3"`` to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class RatMatrix:
    """Immutable dense matrix over the rationals.

    A matrix with ``rows`` rows and ``cols`` columns represents a linear
    map Q^cols -> Q^rows acting on column vectors.  Degenerate shapes
    (zero rows or columns) are legal and show up constantly as empty
    spectral-sequence cells.

    >>> m = RatMatrix([[1, 2], [3, "4/2"]])
    >>> (m * m).entries[0][1]
    Fraction(6, 1)
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        grid = tuple(tuple(as_fraction(x) for x in row) for row in entries)
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ValueError("entry grid does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def from_cols(cls, cols_list, nrows: int) -> "RatMatrix":
        """Assemble a matrix from an iterable of column vectors."""
        cols_list = [tuple(as_fraction(x) for x in c) for c in cols_list]
        if any(len(c) != nrows for c in cols_list):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols_list] for i in range(nrows)],
                   nrows, len(cols_list))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def col(self, j: int):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return RatMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatMatrix([[-x for x in row] for row in self.entries],
                         self.rows, self.cols)

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            bt = other.transpose().entries
            return RatMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt]
                 for row in self.entries], self.rows, other.cols)
        return RatMatrix([[x * as_fraction(other) for x in row]
                          for row in self.entries], self.rows, self.cols)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = RatMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_int(self) -> "IntMatrix":
        if any(x.denominator != 1 for row in self.entries for x in row):
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[x.numerator for x in row] for row in self.entries],
                         self.rows, self.cols)

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in row] for row in self.entries]})"


class IntMatrix:
    """Immutable dense matrix over the integers (arbitrary precision)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ValueError("entry grid does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def col(self, j: int):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def to_rat(self) -> RatMatrix:
        return RatMatrix(self.entries, self.rows, self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            bt = other.transpose().entries
            return IntMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt]
                 for row in self.entries], self.rows, other.cols)
        return IntMatrix([[x * int(other) for x in row]
                          for row in self.entries], self.rows, self.cols)

    def __pow__(self, k: int):
        return (self.to_rat() ** k).to_int()

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank by Bareiss elimination with full pivoting."""
        a = [list(r) for r in self.entries]
        nr, nc = self.rows, self.cols
        colperm = list(range(nc))
        r = 0
        prev = 1
        while r < nr and r < nc:
            piv = None
            for i in range(r, nr):
                for j in range(r, nc):
                    if a[i][colperm[j]] != 0:
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                break
            i0, j0 = piv
            a[r], a[i0] = a[i0], a[r]
            colperm[r], colperm[j0] = colperm[j0], colperm[r]
            pc = colperm[r]
            for i in range(r + 1, nr):
                for j in range(r + 1, nc):
                    cj = colperm[j]
                    a[i][cj] = (a[i][cj] * a[r][pc] - a[i][pc] * a[r][cj]) // prev
                a[i][pc] = 0
            prev = a[r][pc]
            r += 1
        return r

    def __repr__(self):
        return f"IntMatrix({[list(row) for row in self.entries]})"


class BasisIndex:
    """Ordered list of multi-index labels for a graded basis.

    Exterior labels are strictly increasing tuples, tensor labels are
    arbitrary tuples, pair labels couple an exterior label for each
    graded factor.  Labels must be distinct and lexicographically sorted,
    which pins down every matrix in the package.
    """

    __slots__ = ("kind", "labels")

    def __init__(self, kind: str, labels):
        labels = tuple(tuple(l) if isinstance(l, (list, tuple)) else l
                       for l in labels)
        if kind not in ("exterior", "tensor", "pair"):
            raise ValueError(f"unknown basis kind {kind!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be pairwise distinct")
        if list(labels) != sorted(labels):
            raise ValueError("basis labels must be sorted lexicographically")
        if kind == "exterior":
            for l in labels:
                if any(l[i] >= l[i + 1] for i in range(len(l) - 1)):
                    raise ValueError("exterior labels must strictly increase")
        self.kind = kind
        self.labels = labels

    @classmethod
    def exterior(cls, n: int, k: int) -> "BasisIndex":
        return cls("exterior", combinations(range(n), k))

    @classmethod
    def tensor(cls, n: int, s: int) -> "BasisIndex":
        return cls("tensor", product(range(n), repeat=s))

    @classmethod
    def pairs(cls, left: "BasisIndex", right: "BasisIndex") -> "BasisIndex":
        return cls("pair", [(l, r) for l in left.labels for r in right.labels])

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (isinstance(other, BasisIndex) and self.kind == other.kind
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.kind, self.labels))

    def __repr__(self):
        return f"BasisIndex({self.kind}, {len(self.labels)} labels)"


def rank_kernel_image(m: RatMatrix):
    """Exact rank, kernel basis and image basis of a rational matrix.

    Returns ``(rank, kernel_basis, image_basis)``.  Kernel vectors live in
    Q^cols, image vectors are the pivot columns of the original matrix, so
    rank + len(kernel_basis) == cols holds on the nose.
    """
    nr, nc = m.rows, m.cols
    work = [list(r) for r in m.entries]
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(nr):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    rank = r
    pivot_set = set(pivots)
    kernel = []
    for fc in (c for c in range(nc) if c not in pivot_set):
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -work[ri][fc]
        kernel.append(tuple(v))
    image = [m.col(c) for c in pivots]
    return rank, kernel, image


def matrix_rank(m: RatMatrix) -> int:
    """Rank of a rational matrix, via Bareiss when the entries are integral."""
    if all(x.denominator == 1 for row in m.entries for x in row):
        return m.to_int().rank()
    return rank_kernel_image(m)[0]


def kernel_matrix(m: RatMatrix) -> RatMatrix:
    """Kernel basis vectors assembled as the columns of a matrix."""
    _, kernel, _ = rank_kernel_image(m)
    return RatMatrix.from_cols(kernel, m.cols)


def image_matrix(m: RatMatrix) -> RatMatrix:
    _, _, image = rank_kernel_image(m)
    return RatMatrix.from_cols(image, m.rows)


def solve(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Solve A X = B exactly; free variables are set to zero.

    Raises ValueError when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise ValueError("row mismatch in solve")
    nr, nc, k = a.rows, a.cols, b.cols
    work = [list(ar) + list(br) for ar, br in zip(a.entries, b.entries)]
    if nr == 0:
        return RatMatrix.zero(nc, k)
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(nr):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nr):
        if any(work[i][nc + j] != 0 for j in range(k)):
            raise ValueError("inconsistent linear system")
    x = [[Fraction(0)] * k for _ in range(nc)]
    for ri, pc in enumerate(pivots):
        for j in range(k):
            x[pc][j] = work[ri][nc + j]
    return RatMatrix(x, nc, k)


def det(m: RatMatrix) -> Fraction:
    """Determinant of a square rational matrix by exact elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    work = [list(r) for r in m.entries]
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            out = -out
        pv = work[c][c]
        out *= pv
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return out


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product with the first factor as the major index."""
    entries = [[a.entries[ia][ja] * b.entries[ib][jb]
                for ja in range(a.cols) for jb in range(b.cols)]
               for ia in range(a.rows) for ib in range(b.rows)]
    return RatMatrix(entries, a.rows * b.rows, a.cols * b.cols)


def block_diag(mats) -> RatMatrix:
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return RatMatrix(out, rows, cols)


def exterior_power_map(m: RatMatrix, k: int) -> RatMatrix:
    """Matrix of the k-th exterior power in the sorted-subset bases.

    The (I, J) entry is the k x k minor of ``m`` on rows I and columns J,
    so the result has binomial(rows, k) rows and binomial(cols, k)
    columns; when k exceeds a dimension the corresponding side is empty.
    Functorial: the exterior power of a product is the product of the
    exterior powers (Cauchy-Binet).

    >>> exterior_power_map(RatMatrix([[1, 2], [3, 4]]), 2).entries
    ((Fraction(-2, 1),),)
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    row_idx = list(combinations(range(m.rows), k))
    col_idx = list(combinations(range(m.cols), k))
    entries = [[_minor(m, I, J) for J in col_idx] for I in row_idx]
    return RatMatrix(entries, len(row_idx), len(col_idx))


def _minor(m: RatMatrix, I, J) -> Fraction:
    sub = RatMatrix([[m.entries[i][j] for j in J] for i in I], len(I), len(J))
    return det(sub)


def tensor_power_map(m: RatMatrix, s: int) -> RatMatrix:
    """Matrix of the s-th tensor (Kronecker) power in the word bases.

    ``s = 0`` is the empty tensor, a 1 x 1 identity.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    out = RatMatrix.identity(1)
    for _ in range(s):
        out = kron(out, m)
    return out


def smith_normal_form(m: IntMatrix):
    """Smith normal form with unimodular transforms: U * M * V = D.

    D is diagonal with nonnegative entries in a divisibility chain
    d1 | d2 | ... ; U and V have determinant +-1.
    """
    nr, nc = m.rows, m.cols
    a = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):
        for rr in range(nr):
            a[rr][i] -= q * a[rr][j]
        for rr in range(nc):
            v[rr][i] -= q * v[rr][j]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None
                                     or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for rr in range(nr):
                a[rr][t], a[rr][bj] = a[rr][bj], a[rr][t]
            for rr in range(nc):
                v[rr][t], v[rr][bj] = v[rr][bj], v[rr][t]
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                row_op(i, t, a[i][t] // a[t][t])
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                col_op(j, t, a[t][j] // a[t][t])
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        viol = None
        for i in range(t + 1, nr):
            if any(a[i][j] % a[t][t] != 0 for j in range(t + 1, nc)):
                viol = i
                break
        if viol is not None:
            row_op(t, viol, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (IntMatrix(u, nr, nr),
            IntMatrix(a, nr, nc),
            IntMatrix(v, nc, nc))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def vec_gcd(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
