"""Truncated Jacobian quotients, injective representations, kernel sampling.

The quotient of the truncated path space by the derivative ideal is computed
by plain linear algebra over the path basis; when the standard-monomial basis
agrees at two consecutive truncation levels the algebra is declared stable
and serves as a finite-dimensional model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import QQ
from .pathalg import (
    AlgElement,
    PathWord,
    QP,
    arrow_word,
    concat_words,
    cyclic_derivative,
    idem,
)
from .quiver import Arrow
from .reps import (
    DecoratedRep,
    GenericityFailure,
    NotLocallyFreeWitness,
    RepresentationError,
    weight_vectors,
)


def enumerate_paths(qp: QP, max_len: int) -> List[PathWord]:
    """All valid path words of arrow-length <= max_len, loop-decorated."""
    ctx = qp.ctx
    n = qp.quiver.n
    words: List[PathWord] = []
    for i in range(1, n + 1):
        for power in range(ctx.degree(i)):
            words.append(idem(i, power))
    current = [w for w in words if w.arrow_length == 0]
    for _ in range(max_len):
        nxt: List[PathWord] = []
        for w in current:
            for a in qp.quiver.arrows:
                if a.head != w.tail:
                    continue
                for power in range(ctx.degree(a.tail)):
                    piece = arrow_word(a, 0, power)
                    combined = concat_words(ctx, w, piece)
                    if combined is not None:
                        nxt.append(combined)
        words.extend(nxt)
        current = nxt
        if not current:
            break
    return words


@dataclass
class TruncatedQuotient:
    """Standard-monomial basis of the truncated derivative quotient."""

    qp: QP
    max_len: int
    paths: List[PathWord]
    index: Dict[PathWord, int]
    reduction_rows: Dict[int, List[Fraction]]  # pivot index -> rref row
    standard: List[PathWord]
    standard_index: Dict[PathWord, int]

    def reduce_vector(self, vec: List[Fraction]) -> List[Fraction]:
        v = vec[:]
        for pivot in sorted(self.reduction_rows):
            if v[pivot]:
                c = v[pivot]
                row = self.reduction_rows[pivot]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def reduce_element(self, elem: AlgElement) -> Dict[PathWord, Fraction]:
        vec = [Fraction(0)] * len(self.paths)
        for word, coeff in elem.terms.items():
            idx = self.index.get(word)
            if idx is None:
                continue  # beyond truncation
            vec[idx] += coeff
        reduced = self.reduce_vector(vec)
        return {
            self.paths[i]: c for i, c in enumerate(reduced) if c and self.paths[i] in self.standard_index
        }

    def dimension(self, head: Optional[int] = None, tail: Optional[int] = None) -> int:
        return sum(
            1
            for w in self.standard
            if (head is None or w.head == head) and (tail is None or w.tail == tail)
        )


def truncated_quotient(qp: QP, max_len: int) -> TruncatedQuotient:
    paths = enumerate_paths(qp, max_len)
    paths.sort(key=lambda w: (w.arrow_length, repr(w)))
    index = {w: i for i, w in enumerate(paths)}
    generators = []
    for a in qp.quiver.arrows:
        deriv = cyclic_derivative(qp.potential, a)
        if not deriv.is_zero():
            generators.append(deriv)
    rows: List[List[Fraction]] = []
    ctx = qp.ctx
    for gen in generators:
        for left in paths:
            for right in paths:
                product = AlgElement.zero(ctx)
                any_term = False
                for word, coeff in gen.terms.items():
                    lw = concat_words(ctx, left, word)
                    if lw is None:
                        continue
                    full = concat_words(ctx, lw, right)
                    if full is None:
                        continue
                    if full.arrow_length > max_len:
                        continue
                    product = product + AlgElement.of_word(ctx, full, coeff)
                    any_term = True
                if not any_term or product.is_zero():
                    continue
                vec = [Fraction(0)] * len(paths)
                ok = True
                for word, coeff in product.terms.items():
                    idx = index.get(word)
                    if idx is None:
                        ok = False
                        break
                    vec[idx] += coeff
                if ok and any(vec):
                    rows.append(vec)
    reduction_rows: Dict[int, List[Fraction]] = {}
    if rows:
        red, pivots = linalg.rref(rows, QQ)
        for r, pivot in enumerate(pivots):
            reduction_rows[pivot] = red[r]
    standard = [w for i, w in enumerate(paths) if i not in reduction_rows]
    return TruncatedQuotient(
        qp, max_len, paths, index, reduction_rows, standard,
        {w: i for i, w in enumerate(standard)},
    )


def stable_quotient(qp: QP, max_len: int) -> TruncatedQuotient:
    """Quotient whose standard basis agrees at two consecutive levels."""
    a = truncated_quotient(qp, max_len)
    b = truncated_quotient(qp, max_len + 1)
    if set(a.standard) != set(b.standard):
        raise RepresentationError(
            f"derivative quotient does not stabilize at length {max_len}"
        )
    return a


def corner_dimension(qp: QP, k: int, max_len: int) -> int:
    """Dimension of the quotient restricted to paths avoiding endpoint k."""
    tq = truncated_quotient(qp, max_len)
    return sum(1 for w in tq.standard if w.head != k and w.tail != k)


@dataclass
class LocalFreenessReport:
    """Per-vertex loop-module freeness of the quotient, from both sides.

    ``left[k]`` checks the span of classes ending at k under left loop
    multiplication; ``right[k]`` the span of classes starting at k under
    right multiplication.  The two sides are reported separately so any
    divergence is surfaced rather than silently resolved.
    """

    left: Dict[int, bool]
    right: Dict[int, bool]

    @property
    def agree(self) -> bool:
        return self.left == self.right

    @property
    def locally_free(self) -> bool:
        return all(self.left.values()) and all(self.right.values())


def locally_free_check(tq: TruncatedQuotient) -> LocalFreenessReport:
    qp = tq.qp
    n = qp.quiver.n
    ctx = qp.ctx
    left: Dict[int, bool] = {}
    right: Dict[int, bool] = {}
    for k in range(1, n + 1):
        d = qp.quiver.datum.d[k - 1]
        if d == 1:
            left[k] = right[k] = True
            continue
        eps = idem(k, 1)
        for side, store in (("left", left), ("right", right)):
            basis = [w for w in tq.standard
                     if (w.head == k if side == "left" else w.tail == k)]
            index = {w: i for i, w in enumerate(basis)}
            mat = linalg.zeros(len(basis), len(basis))
            for ci, w in enumerate(basis):
                prod = (
                    concat_words(ctx, eps, w) if side == "left"
                    else concat_words(ctx, w, eps)
                )
                if prod is None:
                    continue
                reduced = tq.reduce_element(AlgElement.of_word(ctx, prod))
                for word, coeff in reduced.items():
                    if word in index:
                        mat[index[word]][ci] = coeff
            counts = linalg.nilpotent_block_counts(mat) if basis else []
            counts = counts + [0] * (d - len(counts))
            store[k] = not any(counts[: d - 1])
    return LocalFreenessReport(left, right)


@dataclass
class InjectiveModel:
    """Injective representation at a vertex, spanned by dual standard paths."""

    vertex: int
    basis: Dict[int, List[PathWord]]  # vertex i -> standard paths from i to vertex
    rep: DecoratedRep


def injective_rep(tq: TruncatedQuotient, k: int) -> InjectiveModel:
    qp = tq.qp
    n = qp.quiver.n
    basis: Dict[int, List[PathWord]] = {
        i: [w for w in tq.standard if w.head == k and w.tail == i]
        for i in range(1, n + 1)
    }
    dims = tuple(len(basis[i]) for i in range(1, n + 1))
    ctx = qp.ctx

    def right_mult_matrix(u: PathWord, src: int, dst: int) -> List[List[Fraction]]:
        """Matrix of p -> p*u from basis at ``src`` to basis at ``dst``."""
        rows = len(basis[dst])
        cols = len(basis[src])
        mat = linalg.zeros(rows, cols)
        for ci, p in enumerate(basis[src]):
            prod = concat_words(ctx, p, u)
            if prod is None:
                continue
            reduced = tq.reduce_element(AlgElement.of_word(ctx, prod))
            for word, coeff in reduced.items():
                if word.head == k and word.tail == dst:
                    mat[basis[dst].index(word)][ci] = coeff
        return mat

    loops = {}
    arrows = {}
    for i in range(1, n + 1):
        d_i = qp.quiver.datum.d[i - 1]
        # loop action on I_k at vertex i: transpose of right multiplication by eps_i
        mult = right_mult_matrix(idem(i, 1), i, i) if d_i > 1 else linalg.zeros(
            dims[i - 1], dims[i - 1]
        )
        loops[i] = linalg.transpose(mult) if mult else []
    for a in qp.quiver.arrows:
        # action (I_k)_{ta} -> (I_k)_{ha}: transpose of right mult by a
        mult = right_mult_matrix(arrow_word(a), a.head, a.tail)
        arrows[a] = linalg.transpose(mult) if mult else linalg.zeros(
            dims[a.head - 1], dims[a.tail - 1]
        )
    rep = DecoratedRep(dims, loops, arrows, (0,) * n)
    return InjectiveModel(k, basis, rep)


def hom_basis_between_injectives(
    tq: TruncatedQuotient, src: InjectiveModel, dst: InjectiveModel
) -> List[Dict[int, List[List[Fraction]]]]:
    """Spanning maps I_src -> I_dst indexed by standard paths dst.vertex -> src.vertex.

    Each map is the per-vertex dual of left multiplication by the path.
    """
    qp = tq.qp
    n = qp.quiver.n
    ctx = qp.ctx
    out = []
    for w in tq.standard:
        if w.head != src.vertex or w.tail != dst.vertex:
            continue
        blocks: Dict[int, List[List[Fraction]]] = {}
        for i in range(1, n + 1):
            rows = len(dst.basis[i])
            cols = len(src.basis[i])
            mat = linalg.zeros(cols, rows)  # left mult: dst-basis -> src-basis
            for ci, p in enumerate(dst.basis[i]):
                prod = concat_words(ctx, w, p)
                if prod is None:
                    continue
                reduced = tq.reduce_element(AlgElement.of_word(ctx, prod))
                for word, coeff in reduced.items():
                    if word.head == src.vertex and word.tail == i:
                        mat[src.basis[i].index(word)][ci] = coeff
            blocks[i] = linalg.transpose(mat) if mat else linalg.zeros(rows, cols)
        out.append(blocks)
    return out


def random_kernel_rep(
    qp: QP,
    g_check: Sequence[int],
    trials: int = 12,
    rng_seed: int = 0,
    quotient_len: Optional[int] = None,
) -> DecoratedRep:
    """Kernel of a random presentation between injectives with target weight.

    Draws rational coefficients on the spanning homomorphism sets, takes the
    kernel representation, and retries until the weight matches; decoration
    absorbs split injective summands.
    """
    n = qp.quiver.n
    max_len = quotient_len if quotient_len is not None else qp.ctx.trunc // 2
    tq = stable_quotient(qp, max_len)
    models = {k: injective_rep(tq, k) for k in range(1, n + 1)}
    beta_plus = [max(-g, 0) for g in g_check]   # sources I(beta+)
    beta_minus = [max(g, 0) for g in g_check]   # targets I(beta-)
    rng = random.Random(rng_seed)
    for trial in range(trials):
        rep, ok = _kernel_attempt(qp, tq, models, beta_plus, beta_minus, rng)
        if not ok:
            continue
        try:
            wv = weight_vectors(qp, rep)
        except NotLocallyFreeWitness:
            continue
        if wv.g_check == tuple(g_check):
            return rep
    raise GenericityFailure(
        f"no draw matched weight {tuple(g_check)} within {trials} trials"
    )


def _kernel_attempt(qp, tq, models, beta_plus, beta_minus, rng):
    n = qp.quiver.n
    sources = [k for k in range(1, n + 1) for _ in range(beta_plus[k - 1])]
    targets = [k for k in range(1, n + 1) for _ in range(beta_minus[k - 1])]
    src_dims = [
        [len(models[k].basis[i]) for i in range(1, n + 1)] for k in sources
    ]
    # block map per vertex
    blocks: Dict[int, List[List[Fraction]]] = {}
    for i in range(1, n + 1):
        rows = sum(len(models[k].basis[i]) for k in targets)
        cols = sum(len(models[k].basis[i]) for k in sources)
        blocks[i] = linalg.zeros(rows, cols)
    for ti, tk in enumerate(targets):
        for si, sk in enumerate(sources):
            homs = hom_basis_between_injectives(tq, models[sk], models[tk])
            coeffs = [Fraction(rng.randint(-9, 9)) for _ in homs]
            for i in range(1, n + 1):
                row0 = sum(len(models[k].basis[i]) for k in targets[:ti])
                col0 = sum(len(models[k].basis[i]) for k in sources[:si])
                for c, hom in zip(coeffs, homs):
                    block = hom[i]
                    for r, row in enumerate(block):
                        for cc, val in enumerate(row):
                            blocks[i][row0 + r][col0 + cc] += c * val
    # kernel per vertex
    kernels = {}
    for i in range(1, n + 1):
        cols = sum(len(models[k].basis[i]) for k in sources)
        kernels[i] = linalg.kernel_basis(blocks[i], cols) if cols else []
    dims = tuple(len(kernels[i]) for i in range(1, n + 1))
    # restrict the big source representation to the kernels
    big_loops = {}
    big_arrows = {}
    for i in range(1, n + 1):
        big_loops[i] = _block_diag_list([models[k].rep.loops[i] for k in sources])
    for a in qp.quiver.arrows:
        big_arrows[a] = _block_diag_list([models[k].rep.arrows[a] for k in sources])
    loops = {}
    arrows = {}
    try:
        for i in range(1, n + 1):
            loops[i] = linalg.restrict_operator(big_loops[i], kernels[i])
            if not kernels[i]:
                loops[i] = []
        for a in qp.quiver.arrows:
            cols = []
            for v in kernels[a.tail]:
                image = linalg.apply_matrix(big_arrows[a], v)
                coords = linalg.coords_in_basis(kernels[a.head], image)
                if coords is None:
                    return None, False
                cols.append(coords)
            arrows[a] = linalg.transpose(cols) if cols else linalg.zeros(
                dims[a.head - 1], 0
            )
    except ValueError:
        return None, False
    for i in range(1, n + 1):
        if not kernels[i]:
            loops[i] = linalg.zeros(0, 0)
    for a in qp.quiver.arrows:
        if not kernels[a.tail]:
            arrows[a] = linalg.zeros(dims[a.head - 1], 0)
    rep = DecoratedRep(dims, loops, arrows, (0,) * n)
    # decoration: absorb the difference to the requested weight
    try:
        wv = weight_vectors(qp, rep)
    except (NotLocallyFreeWitness, RepresentationError):
        return None, False
    deco = []
    target = [max(g, 0) for g in (0,) * n]
    for i in range(n):
        want = beta_minus[i] - beta_plus[i]
        have = wv.g_check[i]
        diff = want - have
        if diff < 0:
            return None, False
        deco.append(diff)
    rep = DecoratedRep(dims, loops, arrows, tuple(deco))
    return rep, True


def _block_diag_list(mats: List[List[List[Fraction]]]) -> List[List[Fraction]]:
    total_rows = sum(len(m) for m in mats)
    total_cols = sum(len(m[0]) if m else 0 for m in mats)
    out = linalg.zeros(total_rows, total_cols)
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                out[r0 + i][c0 + j] = v
        r0 += len(m)
        c0 += len(m[0]) if m else 0
    return out
