"""Constructive filtration certificates and nilpotent-action checks.

The rational homology of a nilpotent group of class c in degree j carries
a natural filtration whose layers are subquotients of tensor powers of
the abelianised group, with tensor degree at most c(j-1)+1.  The
certificates here make that bound inspectable: each layer records its
tensor degree, its dimension and the trace of page cells it came from.
For class <= 2 the page degenerates and the layer dimensions are exact;
for higher class they are second-page upper bounds and flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FreeNilpotentSpec, NilpotentAction, witt_number
from .linalg import (RatMatrix, binomial, block_diag, image_matrix,
                     kernel_matrix, rank_kernel_image, solve)
from .spectral import _ks_data, equivariant_page


def tensor_degree_bound(c: int, j: int) -> int:
    """Largest tensor degree a filtration layer can carry: c(j-1)+1.

    Degree zero homology is the ground field, so the bound there is 0.

    >>> tensor_degree_bound(2, 3)
    5
    """
    if c < 1 or j < 0:
        raise ValueError("need c >= 1 and j >= 0")
    return c * (j - 1) + 1 if j >= 1 else 0


@dataclass(frozen=True)
class Layer:
    """One filtration layer: tensor degree, dimension, page-cell trace."""

    tensor_degree: int
    dimension: int
    origin: tuple


@dataclass(frozen=True)
class FiltrationCertificate:
    spec: FreeNilpotentSpec
    j: int
    layers: tuple
    bound: int
    bound_satisfied: bool
    dimensions_exact: bool

    @property
    def total_dimension(self) -> int:
        return sum(l.dimension for l in self.layers)


def filtration_certificate(spec: FreeNilpotentSpec, j: int) -> FiltrationCertificate:
    """Certificate for the tensor-degree bound in homological degree j.

    Layers are enumerated by recursing through the lower-central pages:
    the page of the top lower-central layer contributes cells (i, j-i),
    whose base factor is handled by the class-(c-1) certificate and whose
    fibre factor is a subquotient of the c(j-i)-th tensor power.  Corner
    cells (0, j) are dropped since the degree-(2, q) differential is onto
    them.  Ties in the enumeration are broken by the lexicographic order
    of the origin traces.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    r, c = spec.rank, spec.nil_class
    if j == 0:
        layers = (Layer(0, 1, ()),)
        return FiltrationCertificate(spec, 0, layers, 0, True, True)
    if c == 1:
        dim = binomial(r, j)
        layers = (Layer(j, dim, ()),) if dim else ()
        exact = True
    elif c == 2:
        _, e3 = _ks_data(r)
        layers = []
        for i in range(1, j + 1):
            d = e3.get((i, j - i), 0)
            if d:
                layers.append(Layer(2 * j - i, d, ((i, j - i),)))
        exact = True
    else:
        layers = []
        for i in range(1, j + 1):
            q = j - i
            lam = binomial(witt_number(r, c), q)
            if lam == 0:
                continue
            inner = filtration_certificate(FreeNilpotentSpec(r, c - 1), i)
            for lay in inner.layers:
                layers.append(Layer(lay.tensor_degree + c * q,
                                    lay.dimension * lam,
                                    ((i, q),) + lay.origin))
        exact = False
    layers = tuple(sorted(layers, key=lambda l: l.origin))
    bound = tensor_degree_bound(c, j)
    ok = all(0 <= l.tensor_degree <= bound for l in layers)
    # degree one is the rationalised abelianisation for every class
    return FiltrationCertificate(spec, j, layers, bound, ok, exact or j == 1)


@dataclass(frozen=True)
class ActionNilpotencyReport:
    """Joint nilpotency verdict for a family of commuting operators.

    ``nilpotency_class`` is the least k such that every product of k
    factors (g_i - 1) vanishes, or None when the chain of joint images
    stabilises above zero.  ``image_dims`` records the descending chain.
    """

    operators: tuple
    nilpotent: bool
    nilpotency_class: object
    image_dims: tuple


def is_nilpotent_action(ops) -> ActionNilpotencyReport:
    """Decide whether commuting operators act nilpotently.

    The operators g_i act nilpotently exactly when the (g_i - 1) are
    jointly nilpotent; the class is read off the descending chain of sums
    of images, which must reach zero within dim steps.
    """
    ops = tuple(ops)
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].rows
    for g in ops:
        if not isinstance(g, RatMatrix) or g.shape != (n, n):
            raise ValueError("operators must be square matrices of equal size")
    for i in range(len(ops)):
        for k in range(i + 1, len(ops)):
            if ops[i] * ops[k] != ops[k] * ops[i]:
                raise ValueError("operators must pairwise commute")
    shifted = [g - RatMatrix.identity(n) for g in ops]
    span = RatMatrix.identity(n)
    dims = [n]
    while dims[-1] > 0:
        stacked_cols = []
        for t in shifted:
            prod = t * span
            stacked_cols.extend(prod.col(j) for j in range(prod.cols))
        nxt = image_matrix(RatMatrix.from_cols(stacked_cols, n)) if stacked_cols \
            else RatMatrix.zero(n, 0)
        if nxt.cols == dims[-1]:
            return ActionNilpotencyReport(ops, False, None, tuple(dims))
        span = nxt
        dims.append(nxt.cols)
    return ActionNilpotencyReport(ops, True, max(len(dims) - 1, 1), tuple(dims))


def _subquotient_action(d_out: RatMatrix, d_in: RatMatrix, act: RatMatrix) -> RatMatrix:
    """Action induced on ker(d_out) / im(d_in) by a compatible operator."""
    kmat = kernel_matrix(d_out)
    imat = image_matrix(d_in) if d_in.cols else RatMatrix.zero(d_out.cols, 0)
    # extend the image basis to a basis of the kernel by greedy column picks
    chosen = [imat.col(j) for j in range(imat.cols)]
    extension = []
    for j in range(kmat.cols):
        cand = chosen + extension + [kmat.col(j)]
        rk = rank_kernel_image(RatMatrix.from_cols(cand, d_out.cols))[0]
        if rk > len(chosen) + len(extension):
            extension.append(kmat.col(j))
    if not extension:
        return RatMatrix.zero(0, 0)
    cmat = RatMatrix.from_cols(extension, d_out.cols)
    basis = RatMatrix.from_cols(chosen + extension, d_out.cols)
    coords = solve(basis, act * cmat)
    rows = range(imat.cols, imat.cols + len(extension))
    return RatMatrix([[coords.entries[i][j] for j in range(len(extension))]
                      for i in rows])


def induced_homology_action(spec: FreeNilpotentSpec, act: NilpotentAction, j: int):
    """Matrices of the action induced on degree-j rational homology.

    Computed on the third-page cells of the equivariant page, which is
    the whole homology for class <= 2.  Degree zero always gives the
    identity on a line.
    """
    if spec.nil_class > 2:
        raise ValueError("induced homology actions need class <= 2")
    if j < 0:
        raise ValueError("degree must be nonnegative")
    ngens = len(act.generators)
    if j == 0:
        return [RatMatrix.identity(1) for _ in range(ngens)]
    epage = equivariant_page(spec, act)
    page = epage.page
    blocks = [[] for _ in range(ngens)]
    for i in range(1, j + 1):
        q = j - i
        if page.cell_dim(i, q) == 0:
            continue
        d_out = page.diff(i, q)
        d_in = page.diff(i + 2, q - 1)
        for gi in range(ngens):
            blk = _subquotient_action(d_out, d_in, epage.actions[(i, q)][gi])
            blocks[gi].append(blk)
    return [block_diag(bl) if bl else RatMatrix.zero(0, 0) for bl in blocks]
