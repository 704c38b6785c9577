"""Decorated representations over exact rationals.

A representation assigns each vertex a rational vector space with a nilpotent
loop action and each arrow a matrix; the decoration adds free loop-module
ranks.  All constructions (relation checks, the incoming/outgoing triangle,
weight vectors, mutation) are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import QQ, Matrix
from .pathalg import (
    AlgElement,
    PathWord,
    Potential,
    Premutation,
    QP,
    SplitResult,
    composite_derivative,
    cyclic_derivative,
    eps_derivative,
    premutate_qp,
    split_reduce,
)
from .quiver import Arrow


class RepresentationError(ValueError):
    pass


class NotLocallyFreeWitness(RepresentationError):
    """A required subquotient fails to be free over its vertex loop ring."""

    def __init__(self, vertex: int, what: str, block_counts: Sequence[int]):
        super().__init__(
            f"{what} at vertex {vertex} is not free: loop block sizes {list(block_counts)}"
        )
        self.vertex = vertex
        self.what = what
        self.block_counts = tuple(block_counts)


class GenericityFailure(RepresentationError):
    pass


@dataclass
class DecoratedRep:
    """Vertex spaces with loop matrices, arrow matrices, decoration ranks."""

    dims: Tuple[int, ...]
    loops: Dict[int, Matrix]           # vertex -> nilpotent matrix E_i
    arrows: Dict[Arrow, Matrix]        # arrow -> matrix M_{t(a)} -> M_{h(a)}
    decoration: Tuple[int, ...]        # free rank v_i per vertex

    @staticmethod
    def make(dims: Sequence[int], loops=None, arrows=None, decoration=None) -> "DecoratedRep":
        dims = tuple(dims)
        n = len(dims)
        loops = dict(loops or {})
        for i in range(1, n + 1):
            if i not in loops:
                loops[i] = linalg.zeros(dims[i - 1], dims[i - 1])
            loops[i] = [[Fraction(x) for x in row] for row in loops[i]]
        arrows = {a: [[Fraction(x) for x in row] for row in m] for a, m in (arrows or {}).items()}
        decoration = tuple(decoration) if decoration is not None else (0,) * n
        return DecoratedRep(dims, loops, arrows, decoration)

    def dim(self, vertex: int) -> int:
        return self.dims[vertex - 1]

    def total_dim(self) -> int:
        return sum(self.dims)

    def loop(self, vertex: int) -> Matrix:
        return self.loops[vertex]

    def arrow(self, a: Arrow) -> Matrix:
        return self.arrows.get(a) or linalg.zeros(self.dim(a.head), self.dim(a.tail))


def zero_rep(n: int, decoration: Optional[Sequence[int]] = None) -> DecoratedRep:
    return DecoratedRep.make((0,) * n, decoration=decoration)


def generalized_simple(qp: QP, k: int) -> DecoratedRep:
    """The loop ring itself placed at vertex k, zero elsewhere."""
    n = qp.quiver.n
    d = qp.quiver.datum.d[k - 1]
    dims = [0] * n
    dims[k - 1] = d
    shift = linalg.zeros(d, d)
    for t in range(d - 1):
        shift[t + 1][t] = Fraction(1)
    return DecoratedRep.make(dims, loops={k: shift})


def negative_simple(qp: QP, k: int) -> DecoratedRep:
    """Decorated representation (0, H_k): zero module, rank-1 decoration at k."""
    n = qp.quiver.n
    deco = [0] * n
    deco[k - 1] = 1
    return zero_rep(n, deco)


def direct_sum(a: DecoratedRep, b: DecoratedRep) -> DecoratedRep:
    n = len(a.dims)
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    loops = {}
    for i in range(1, n + 1):
        loops[i] = _block_diag(a.loops[i], b.loops[i])
    arrows = {}
    for arrow in set(a.arrows) | set(b.arrows):
        arrows[arrow] = _block_diag2(
            a.arrow(arrow), b.arrow(arrow), a.dim(arrow.head), a.dim(arrow.tail)
        )
    deco = tuple(x + y for x, y in zip(a.decoration, b.decoration))
    return DecoratedRep(dims, loops, arrows, deco)


def _block_diag(m1: Matrix, m2: Matrix) -> Matrix:
    r1, r2 = len(m1), len(m2)
    c1 = len(m1[0]) if m1 else 0
    c2 = len(m2[0]) if m2 else 0
    out = linalg.zeros(r1 + r2, c1 + c2)
    for i in range(r1):
        for j in range(c1):
            out[i][j] = m1[i][j]
    for i in range(r2):
        for j in range(c2):
            out[r1 + i][c1 + j] = m2[i][j]
    return out


def _block_diag2(m1: Matrix, m2: Matrix, rows1: int, cols1: int) -> Matrix:
    r2 = len(m2)
    c2 = len(m2[0]) if m2 else 0
    out = linalg.zeros(rows1 + r2, cols1 + c2)
    for i in range(len(m1)):
        for j in range(len(m1[0]) if m1 else 0):
            out[i][j] = m1[i][j]
    for i in range(r2):
        for j in range(c2):
            out[rows1 + i][cols1 + j] = m2[i][j]
    return out


# -- evaluation -----------------------------------------------------------

def evaluate_word(rep: DecoratedRep, word) -> Matrix:
    """Matrix of a path word: loop powers interleaved with arrow matrices.

    Chains through a zero-dimensional vertex collapse to the zero matrix of
    the correct shape (empty matrices cannot carry their column count).
    """
    rows = rep.dim(word.head)
    cols = rep.dim(word.tail)
    if any(rep.dim(word.junction_vertex(i)) == 0 for i in range(len(word.loops))):
        return linalg.zeros(rows, cols)
    mat = linalg.mat_pow(rep.loop(word.head), word.loops[0])
    for idx, arrow in enumerate(word.arrows):
        mat = linalg.mat_mul(mat, rep.arrow(arrow))
        mat = linalg.mat_mul(mat, linalg.mat_pow(rep.loop(word.junction_vertex(idx + 1)), word.loops[idx + 1]))
    return mat


def evaluate_element(rep: DecoratedRep, elem: AlgElement, tail: int, head: int) -> Matrix:
    """Matrix of a path-algebra element whose words all run tail -> head."""
    total = linalg.zeros(rep.dim(head), rep.dim(tail))
    for word, coeff in elem.terms.items():
        if word.tail != tail or word.head != head:
            raise RepresentationError(f"word {word} does not run {tail}->{head}")
        total = linalg.mat_add(total, linalg.mat_scale(evaluate_word(rep, word), coeff))
    return total


def check_rep(qp: QP, rep: DecoratedRep):
    """(True, None) when all loop-nilpotency and derivative relations hold."""
    n = qp.quiver.n
    if len(rep.dims) != n:
        raise RepresentationError("dimension vector has wrong length")
    for a in qp.quiver.arrows:
        mat = rep.arrow(a)
        if len(mat) != rep.dim(a.head) or (mat and len(mat[0]) != rep.dim(a.tail)):
            raise RepresentationError(f"matrix shape mismatch on {a}")
    for i in range(1, n + 1):
        d = qp.quiver.datum.d[i - 1]
        power = linalg.mat_pow(rep.loop(i), d)
        if any(any(x != 0 for x in row) for row in power):
            return False, f"loop at vertex {i} is not nilpotent of degree {d}"
    for a in qp.quiver.arrows:
        deriv = cyclic_derivative(qp.potential, a)
        mat = evaluate_element(rep, deriv, a.head, a.tail)
        if any(any(x != 0 for x in row) for row in mat):
            return False, f"derivative relation fails at arrow {a}"
    return True, None


# -- the incoming/outgoing triangle ---------------------------------------

@dataclass
class TriangleMaps:
    """Assembled incoming/outgoing maps at a vertex with basis bookkeeping.

    in_slots / out_slots list (loop power, arrow) per block, each block of
    width dim M at the arrow's far end; loop action on the slot spaces shifts
    the power index.
    """

    k: int
    d: int
    alpha: Matrix
    beta: Matrix
    gamma: Matrix
    in_slots: List[Tuple[int, Arrow]]
    out_slots: List[Tuple[int, Arrow]]
    in_dim: int
    out_dim: int
    e_in: Matrix
    e_out: Matrix


def triangle(qp: QP, rep: DecoratedRep, k: int) -> TriangleMaps:
    quiver = qp.quiver
    d = quiver.datum.d[k - 1]
    into = sorted(quiver.arrows_into(k))
    out_of = sorted(quiver.arrows_out_of(k))
    in_slots = [(l, a) for l in range(d) for a in into]
    out_slots = [(f, b) for f in range(d) for b in out_of]
    in_dim = sum(rep.dim(a.tail) for _, a in in_slots)
    out_dim = sum(rep.dim(b.head) for _, b in out_slots)
    mk = rep.dim(k)
    ek = rep.loop(k)

    alpha = linalg.zeros(mk, in_dim)
    col = 0
    for (l, a) in in_slots:
        block = linalg.mat_mul(linalg.mat_pow(ek, l), rep.arrow(a))
        _paste(alpha, block, 0, col)
        col += rep.dim(a.tail)

    beta = linalg.zeros(out_dim, mk)
    row = 0
    for (f, b) in out_slots:
        block = linalg.mat_mul(rep.arrow(b), linalg.mat_pow(ek, d - 1 - f))
        _paste(beta, block, row, 0)
        row += rep.dim(b.head)

    gamma = linalg.zeros(in_dim, out_dim)
    row = 0
    for (l, a) in in_slots:
        col = 0
        for (f, b) in out_slots:
            if l >= f:
                deriv = composite_derivative(qp.potential, b, l - f, a)
                block = evaluate_element(rep, deriv, b.head, a.tail)
                _paste(gamma, block, row, col)
            col += rep.dim(b.head)
        row += rep.dim(a.tail)

    e_in = _slot_shift(in_slots, rep, lambda slot: slot[1].tail, d)
    e_out = _slot_shift(out_slots, rep, lambda slot: slot[1].head, d)

    maps = TriangleMaps(k, d, alpha, beta, gamma, in_slots, out_slots, in_dim, out_dim, e_in, e_out)
    ag = linalg.mat_mul(alpha, gamma)
    gb = linalg.mat_mul(gamma, beta)
    if any(any(x != 0 for x in row) for row in ag) or any(
        any(x != 0 for x in row) for row in gb
    ):
        raise RepresentationError(
            "triangle identities fail; the input does not satisfy the relations"
        )
    return maps


def _paste(target: Matrix, block: Matrix, row: int, col: int) -> None:
    for i, r in enumerate(block):
        for j, x in enumerate(r):
            target[row + i][col + j] = x


def _slot_shift(slots, rep: DecoratedRep, far_vertex, d: int) -> Matrix:
    """Loop action on a slot space: raise the power index by one."""
    sizes = [rep.dim(far_vertex(s)) for s in slots]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    total = offsets[-1]
    mat = linalg.zeros(total, total)
    index = {slot: i for i, slot in enumerate(slots)}
    for i, (power, arrow) in enumerate(slots):
        if (power + 1, arrow) in index:
            j = index[(power + 1, arrow)]
            for t in range(sizes[i]):
                mat[offsets[j] + t][offsets[i] + t] = Fraction(1)
    return mat


# -- loop-module structure helpers ----------------------------------------

@dataclass
class Subquotient:
    """U/W inside an ambient space with a nilpotent loop action.

    ``reps`` are coset representative columns (ambient coordinates); ``e``
    is the induced loop action in those coordinates; ``project`` maps an
    ambient vector of U into subquotient coordinates.
    """

    ambient_dim: int
    w_basis: List[List[Fraction]]
    reps: List[List[Fraction]]
    e: Matrix

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, vector: Sequence[Fraction]) -> List[Fraction]:
        cols = self.w_basis + self.reps
        coords = linalg.coords_in_basis(cols, vector)
        if coords is None:
            raise RepresentationError("vector is not in the subspace")
        return coords[len(self.w_basis):]


def make_subquotient(e_ambient: Matrix, u_basis: List[List[Fraction]],
                     w_basis: List[List[Fraction]]) -> Subquotient:
    """Subquotient span(u)/span(w) with the induced loop action."""
    ambient_dim = len(e_ambient)
    w_red = _independent(w_basis)
    reps = []
    current = [v[:] for v in w_red]
    for v in u_basis:
        if not linalg.in_span(current, v):
            reps.append(v[:])
            current.append(v[:])
    sq = Subquotient(ambient_dim, w_red, reps, [])
    e_cols = []
    for v in reps:
        image = linalg.apply_matrix(e_ambient, v)
        e_cols.append(sq.project(image))
    sq.e = linalg.transpose(e_cols) if reps else []
    return sq


def _independent(vectors: List[List[Fraction]]) -> List[List[Fraction]]:
    basis: List[List[Fraction]] = []
    for v in vectors:
        if not linalg.in_span(basis, v):
            basis.append(v[:])
    return basis


def loop_block_counts(e: Matrix) -> List[int]:
    return linalg.nilpotent_block_counts(e) if e else []


def module_type(e: Matrix, d: int) -> Tuple[int, ...]:
    """Multiplicity of loop blocks of each size 1..d."""
    counts = loop_block_counts(e)
    counts = counts + [0] * (d - len(counts))
    if len(counts) > d:
        raise RepresentationError("loop action exceeds the nilpotency degree")
    return tuple(counts[:d])


def free_rank(e: Matrix, d: int, vertex: int, what: str) -> int:
    t = module_type(e, d)
    if any(t[:-1]):
        raise NotLocallyFreeWitness(vertex, what, loop_block_counts(e))
    return t[-1]


def module_generators(e: Matrix, d: int) -> List[int]:
    """Column indices whose images generate the module over the loop ring.

    Requires the module to be free of finite rank; picks pivots of the
    quotient by the loop image, ascending.
    """
    dim = len(e)
    if dim == 0:
        return []
    image = linalg.column_space_basis(e)
    gens: List[int] = []
    current = [v[:] for v in image]
    for idx in range(dim):
        v = [Fraction(1) if t == idx else Fraction(0) for t in range(dim)]
        if not linalg.in_span(current, v):
            gens.append(idx)
            current.append(v)
    return gens


# -- weight vectors --------------------------------------------------------

@dataclass
class WeightVectors:
    g: Tuple[int, ...]
    g_check: Tuple[int, ...]
    beta_plus: Tuple[int, ...]
    beta_minus: Tuple[int, ...]
    beta_check_plus: Tuple[int, ...]
    beta_check_minus: Tuple[int, ...]


def weight_vectors(qp: QP, rep: DecoratedRep, validate: bool = True) -> WeightVectors:
    if validate:
        ok, why = check_rep(qp, rep)
        if not ok:
            raise RepresentationError(f"not a representation: {why}")
    n = qp.quiver.n
    bp, bm, cp, cm = [], [], [], []
    for k in range(1, n + 1):
        d = qp.quiver.datum.d[k - 1]
        tri = triangle(qp, rep, k)
        mk = rep.dim(k)
        ek = rep.loop(k)
        full_k = _standard_basis(mk)
        im_alpha = linalg.column_space_basis(tri.alpha)
        coker = make_subquotient(ek, full_k, im_alpha)
        ker_alpha = linalg.kernel_basis(tri.alpha, tri.in_dim)
        im_gamma = linalg.column_space_basis(tri.gamma)
        ker_over_im = make_subquotient(tri.e_in, ker_alpha, im_gamma)
        ker_beta = linalg.kernel_basis(tri.beta, mk)
        kb = make_subquotient(ek, ker_beta, [])
        ker_gamma = linalg.kernel_basis(tri.gamma, tri.out_dim)
        im_beta = linalg.column_space_basis(tri.beta)
        kg_over_ib = make_subquotient(tri.e_out, ker_gamma, im_beta)

        v_k = rep.decoration[k - 1]
        bp.append(free_rank(coker.e, d, k, "coker(alpha)"))
        bm.append(free_rank(ker_over_im.e, d, k, "ker(alpha)/im(gamma)") + v_k)
        cp.append(free_rank(kb.e, d, k, "ker(beta)"))
        cm.append(free_rank(kg_over_ib.e, d, k, "ker(gamma)/im(beta)") + v_k)
    g = tuple(m - p for m, p in zip(bm, bp))
    gc = tuple(m - p for m, p in zip(cm, cp))
    return WeightVectors(g, gc, tuple(bp), tuple(bm), tuple(cp), tuple(cm))


def _standard_basis(n: int) -> List[List[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for i in range(n)] for j in range(n)]


# -- mutation of decorated representations ---------------------------------

@dataclass
class RepMutationResult:
    qp: QP
    rep: DecoratedRep
    premutation: Premutation
    split: SplitResult


def mutate_rep(qp: QP, rep: DecoratedRep, k: int,
               pivot_descending: bool = False) -> RepMutationResult:
    """Mutation at k: new vertex space from the triangle subquotients,
    transported through the splitting of the substituted potential.

    ``pivot_descending`` flips the deterministic generator choices used for
    the splitting data; the result must be isomorphic either way.
    """
    if not qp.is_reduced():
        raise RepresentationError("mutation needs a reduced quiver with potential")
    ok, why = check_rep(qp, rep)
    if not ok:
        raise RepresentationError(f"not a representation: {why}")
    pre = premutate_qp(qp, k)
    d = qp.quiver.datum.d[k - 1]
    tri = triangle(qp, rep, k)
    mk = rep.dim(k)
    ek = rep.loop(k)
    v_k = rep.decoration[k - 1]

    ker_gamma = linalg.kernel_basis(tri.gamma, tri.out_dim)
    im_beta = linalg.column_space_basis(tri.beta)
    im_gamma = linalg.column_space_basis(tri.gamma)
    ker_alpha = linalg.kernel_basis(tri.alpha, tri.in_dim)

    s1 = make_subquotient(tri.e_out, ker_gamma, im_beta)      # ker g / im b
    s3 = make_subquotient(tri.e_in, ker_alpha, im_gamma)      # ker a / im g
    s2_basis = _independent(im_gamma)                          # im g, a submodule

    r1 = free_rank(s1.e, d, k, "ker(gamma)/im(beta)")
    r3 = free_rank(s3.e, d, k, "ker(alpha)/im(gamma)")
    h1 = _free_module_coords(s1, d, pivot_descending)
    h3 = _free_module_coords(s3, d, pivot_descending)

    n2 = len(s2_basis)
    dim_new_k = d * r1 + n2 + d * r3 + d * v_k

    # loop action on the new vertex space, blockwise
    e_s2 = linalg.restrict_operator(tri.e_in, s2_basis) if s2_basis else []
    e_new = linalg.zeros(dim_new_k, dim_new_k)
    _paste(e_new, _shift_blocks(r1, d), 0, 0)
    _paste(e_new, e_s2, d * r1, d * r1)
    _paste(e_new, _shift_blocks(r3, d), d * r1 + n2, d * r1 + n2)
    _paste(e_new, _shift_blocks(v_k, d), d * r1 + n2 + d * r3, d * r1 + n2 + d * r3)

    # alpha-bar = (-pi rho, -gamma, 0, 0)^T  : old out-space -> new vertex space
    pi_rho = _extend_h_linear(tri.e_out, ker_gamma, s1, h1, d, pivot_descending)
    alpha_bar = linalg.zeros(dim_new_k, tri.out_dim)
    _paste(alpha_bar, linalg.mat_scale(pi_rho, Fraction(-1)), 0, 0)
    gamma_in_s2 = _coords_matrix(s2_basis, tri.gamma)
    _paste(alpha_bar, linalg.mat_scale(gamma_in_s2, Fraction(-1)), d * r1, 0)

    # beta-bar = (0, incl, incl o section, 0) : new vertex space -> old in-space
    beta_bar = linalg.zeros(tri.in_dim, dim_new_k)
    if s2_basis:
        _paste(beta_bar, linalg.transpose(s2_basis), 0, d * r1)
    section = _free_section(tri.e_in, s3, h3, d)
    _paste(beta_bar, section, 0, d * r1 + n2)

    # assemble the mutated decorated representation over the substituted quiver
    dims = list(rep.dims)
    dims[k - 1] = dim_new_k
    loops = {i: rep.loops[i] for i in rep.loops}
    loops[k] = e_new
    arrows: Dict[Arrow, Matrix] = {}
    for c in pre.qp.quiver.arrows:
        if c.head != k and c.tail != k and c not in pre.composite.values():
            arrows[c] = rep.arrow(c)
    for (b, power, a), comp in pre.composite.items():
        arrows[comp] = evaluate_word(rep, PathWord((b, a), (0, power, 0)))
    # new incoming arrows b*: j -> k read off the power-0 block of alpha-bar
    offset = 0
    for (f, b) in tri.out_slots:
        width = rep.dim(b.head)
        if f == 0:
            arrows[pre.reversed_out[b]] = _slice_cols(alpha_bar, offset, width)
        offset += width
    # new outgoing arrows a*: k -> i read off the top power block of beta-bar
    offset = 0
    for (l, a) in tri.in_slots:
        height = rep.dim(a.tail)
        if l == d - 1:
            arrows[pre.reversed_in[a]] = _slice_rows(beta_bar, offset, height)
        offset += height

    # decoration: ker(beta) / (ker(beta) cap im(alpha))
    ker_beta = linalg.kernel_basis(tri.beta, mk)
    im_alpha = linalg.column_space_basis(tri.alpha)
    meet = _intersect(ker_beta, im_alpha, mk)
    vbar = make_subquotient(ek, ker_beta, meet)
    v_new = free_rank(vbar.e, d, k, "ker(beta)/(ker(beta) & im(alpha))")
    deco = list(rep.decoration)
    deco[k - 1] = v_new

    pre_rep = DecoratedRep(tuple(dims), loops, arrows, tuple(deco))
    ok, why = check_rep(pre.qp, pre_rep)
    if not ok:
        raise RepresentationError(f"substituted representation is broken: {why}")

    split = split_reduce(pre.qp)
    reduced_arrows: Dict[Arrow, Matrix] = {}
    for c in split.reduced.quiver.arrows:
        elem = split.backward[c]
        reduced_arrows[c] = evaluate_element(pre_rep, elem, c.tail, c.head)
    reduced_rep = DecoratedRep(tuple(dims), loops, reduced_arrows, tuple(deco))
    ok, why = check_rep(split.reduced, reduced_rep)
    if not ok:
        raise RepresentationError(f"reduced representation is broken: {why}")
    return RepMutationResult(split.reduced, reduced_rep, pre, split)


def _shift_blocks(rank: int, d: int) -> Matrix:
    """Loop action on a free module of the given rank: block shift matrices."""
    size = rank * d
    mat = linalg.zeros(size, size)
    for s in range(rank):
        for t in range(d - 1):
            mat[s * d + t + 1][s * d + t] = Fraction(1)
    return mat


def _free_module_coords(sq: Subquotient, d: int, descending: bool) -> List[int]:
    """Generator indices for a free subquotient, in pivot order."""
    gens = module_generators(sq.e, d)
    if descending:
        gens = _module_generators_desc(sq.e, d)
    return gens


def _module_generators_desc(e: Matrix, d: int) -> List[int]:
    dim = len(e)
    if dim == 0:
        return []
    image = linalg.column_space_basis(e)
    gens: List[int] = []
    current = [v[:] for v in image]
    for idx in reversed(range(dim)):
        v = [Fraction(1) if t == idx else Fraction(0) for t in range(dim)]
        if not linalg.in_span(current, v):
            gens.append(idx)
            current.append(v)
    return gens


def _adapted_basis(sq: Subquotient, gens: List[int], d: int) -> Matrix:
    """Change of basis: columns are e^t g_s in subquotient coordinates."""
    cols = []
    for s in gens:
        v = [Fraction(1) if t == s else Fraction(0) for t in range(sq.dim)]
        for _ in range(d):
            cols.append(v)
            v = linalg.apply_matrix(sq.e, v)
    return linalg.transpose(cols)


def _extend_h_linear(e_ambient: Matrix, sub_basis: List[List[Fraction]],
                     sq: Subquotient, gens: List[int], d: int,
                     descending: bool) -> Matrix:
    """Loop-equivariant extension of the quotient projection to the ambient.

    The target is the free subquotient in its adapted basis (generator-major,
    power-minor); freeness makes the target injective over the loop ring, so
    the extension exists and is determined by top-coefficient functionals.
    """
    ambient_dim = len(e_ambient)
    rank = len(gens)
    if rank == 0:
        return linalg.zeros(0, ambient_dim)
    adapted = _adapted_basis(sq, gens, d)
    adapted_inv_rows = _left_inverse(adapted)
    sub = _independent(sub_basis)
    # top-coefficient functionals on the submodule: coefficient of e^{d-1} g_s
    top_rows = [adapted_inv_rows[s * d + (d - 1)] for s in range(rank)]
    complement = _complement_indices(sub, ambient_dim, descending)
    basis_mat = linalg.transpose(sub + complement)
    basis_inv = _left_inverse(basis_mat)
    lam_rows = []
    for s in range(rank):
        # functional value on each submodule basis vector, zero on complement
        values = []
        for v in sub:
            coords = sq.project(v)
            values.append(linalg.sum_prod(top_rows[s], coords, QQ))
        values.extend([Fraction(0)] * len(complement))
        lam = [
            linalg.sum_prod(values, [basis_inv[j][idx] for j in range(ambient_dim)], QQ)
            for idx in range(ambient_dim)
        ]
        lam_rows.append(lam)
    # row (s, t) of the output is lam_s composed with the (d-1-t)-th loop power
    out_rows = []
    powers = [linalg.mat_pow(e_ambient, p) for p in range(d)]
    for s in range(rank):
        for t in range(d):
            row = linalg.apply_matrix(linalg.transpose(powers[d - 1 - t]), lam_rows[s])
            out_rows.append(row)
    return out_rows


def _complement_indices(sub: List[List[Fraction]], ambient_dim: int,
                        descending: bool) -> List[List[Fraction]]:
    order = range(ambient_dim - 1, -1, -1) if descending else range(ambient_dim)
    current = [v[:] for v in sub]
    extra = []
    for idx in order:
        v = [Fraction(1) if t == idx else Fraction(0) for t in range(ambient_dim)]
        if not linalg.in_span(current, v):
            extra.append(v)
            current.append(v)
    return extra


def _left_inverse(mat: Matrix) -> Matrix:
    """Left inverse of a full-column-rank matrix."""
    cols = len(mat[0]) if mat else 0
    rows = len(mat)
    aug = [list(mat[i]) + [Fraction(1) if j == i else Fraction(0) for j in range(rows)]
           for i in range(rows)]
    red, pivots = linalg.rref(aug, QQ)
    out = linalg.zeros(cols, rows)
    for r, pc in enumerate(pivots):
        if pc < cols:
            for j in range(rows):
                out[pc][j] = red[r][cols + j]
    return out


def _free_section(e_ambient: Matrix, sq: Subquotient, gens: List[int], d: int) -> Matrix:
    """Loop-equivariant section of the quotient map for a free subquotient.

    Sends the adapted basis vector e^t g_s to the ambient vector E^t lift(g_s),
    lifting each generator to its coset representative.
    """
    ambient_dim = sq.ambient_dim
    if not gens:
        return linalg.zeros(ambient_dim, 0)
    cols = []
    for idx in gens:
        v = sq.reps[idx][:]
        for _ in range(d):
            cols.append(v)
            v = linalg.apply_matrix(e_ambient, v)
    return linalg.transpose(cols)


def _coords_matrix(basis: List[List[Fraction]], mat: Matrix) -> Matrix:
    """Express each column of ``mat`` in the given independent column basis."""
    if not basis:
        return linalg.zeros(0, len(mat[0]) if mat else 0)
    cols = linalg.transpose(mat)
    out_cols = []
    basis_mat = linalg.transpose(basis)
    for c in cols:
        coords = linalg.solve(basis_mat, c, QQ)
        if coords is None:
            raise RepresentationError("image does not lie in the expected subspace")
        out_cols.append(coords)
    return linalg.transpose(out_cols) if out_cols else linalg.zeros(len(basis), 0)


def _slice_cols(mat: Matrix, start: int, width: int) -> Matrix:
    return [row[start:start + width] for row in mat]


def _slice_rows(mat: Matrix, start: int, height: int) -> Matrix:
    return [row[:] for row in mat[start:start + height]]


def _intersect(basis_a: List[List[Fraction]], basis_b: List[List[Fraction]],
               ambient: int) -> List[List[Fraction]]:
    """Basis of the intersection of two column spans."""
    if not basis_a or not basis_b:
        return []
    stacked = linalg.transpose(basis_a + [[-x for x in v] for v in basis_b])
    null = linalg.kernel_basis(stacked, len(basis_a) + len(basis_b))
    out = []
    for vec in null:
        combo = [Fraction(0)] * ambient
        for coeff, v in zip(vec[:len(basis_a)], basis_a):
            combo = [c + coeff * x for c, x in zip(combo, v)]
        out.append(combo)
    return _independent(out)


# -- Jordan type ------------------------------------------------------------

def jordan_type(qp: QP, rep: DecoratedRep) -> Dict[int, List[int]]:
    """Block counts of the loop-derivative operator on ker(loop)/im(loop)."""
    out: Dict[int, List[int]] = {}
    for k in range(1, qp.quiver.n + 1):
        d = qp.quiver.datum.d[k - 1]
        if d > 2:
            raise RepresentationError("Jordan stratification is defined for degrees <= 2")
        ek = rep.loop(k)
        mk = rep.dim(k)
        operator = evaluate_element(rep, eps_derivative(qp.potential, k), k, k)
        ker = linalg.kernel_basis(ek, mk) if d == 2 else _standard_basis(mk)
        im = linalg.column_space_basis(ek) if d == 2 else []
        sq = make_subquotient(linalg.zeros(mk, mk), ker, im)
        induced_cols = []
        for v in sq.reps:
            image = linalg.apply_matrix(operator, v)
            induced_cols.append(sq.project(image))
        induced = linalg.transpose(induced_cols) if sq.reps else []
        out[k] = loop_block_counts(induced)
    return out


@dataclass
class GRuleComparison:
    """Both published forms of the weight mutation rule, for cross-reporting.

    The subquotient form uses the positive/negative parts at the mutation
    vertex; the threshold form uses the positive parts of the weight entry
    itself.  They agree exactly for weight-coherent inputs; a disagreement
    signals a non-general representation and is reported, not resolved.
    """

    via_parts: Tuple[int, ...]
    via_threshold: Tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.via_parts == self.via_threshold


def g_rule_both_forms(qp: QP, rep: DecoratedRep, k: int) -> GRuleComparison:
    wv = weight_vectors(qp, rep)
    b = qp.quiver.b_matrix()
    d_k = qp.quiver.datum.d[k - 1]
    n = qp.quiver.n
    parts = []
    threshold = []
    for i in range(1, n + 1):
        if i == k:
            parts.append(-wv.g[k - 1])
            threshold.append(-wv.g[k - 1])
            continue
        b_ik = b[i - 1][k - 1]
        parts.append(
            wv.g[i - 1]
            + d_k * max(-b_ik, 0) * wv.beta_minus[k - 1]
            - d_k * max(b_ik, 0) * wv.beta_plus[k - 1]
        )
        threshold.append(
            wv.g[i - 1]
            + d_k * max(-b_ik, 0) * max(wv.g[k - 1], 0)
            - d_k * max(b_ik, 0) * max(-wv.g[k - 1], 0)
        )
    return GRuleComparison(tuple(parts), tuple(threshold))


def hom_dim(qp: QP, rep_a: DecoratedRep, rep_b: DecoratedRep) -> int:
    """Dimension of the space of homomorphisms between two module parts.

    A homomorphism is a tuple of matrices commuting with loops and arrows;
    decorations do not contribute.
    """
    n = qp.quiver.n
    sizes = [(rep_b.dims[i], rep_a.dims[i]) for i in range(n)]
    offsets = [0]
    for rows, cols in sizes:
        offsets.append(offsets[-1] + rows * cols)
    total = offsets[-1]
    equations: List[List[Fraction]] = []

    def entry_index(vertex: int, i: int, j: int) -> int:
        rows, cols = sizes[vertex - 1]
        return offsets[vertex - 1] + i * cols + j

    for vertex in range(1, n + 1):
        ea = rep_a.loop(vertex)
        eb = rep_b.loop(vertex)
        rows, cols = sizes[vertex - 1]
        for i in range(rows):
            for j in range(cols):
                row = [Fraction(0)] * total
                for t in range(cols):
                    row[entry_index(vertex, i, t)] += ea[t][j]
                for t in range(rows):
                    row[entry_index(vertex, t, j)] -= eb[i][t]
                if any(row):
                    equations.append(row)
    for arrow in qp.quiver.arrows:
        ma = rep_a.arrow(arrow)
        mb = rep_b.arrow(arrow)
        rows_h, cols_h = sizes[arrow.head - 1]
        rows_t, cols_t = sizes[arrow.tail - 1]
        for i in range(rows_h):
            for j in range(cols_t):
                row = [Fraction(0)] * total
                for t in range(cols_h):
                    row[entry_index(arrow.head, i, t)] += ma[t][j]
                for t in range(rows_t):
                    row[entry_index(arrow.tail, t, j)] -= mb[i][t]
                if any(row):
                    equations.append(row)
    if total == 0:
        return 0
    if not equations:
        return total
    return total - linalg.rank(equations)
