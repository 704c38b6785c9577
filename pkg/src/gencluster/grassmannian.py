"""Counting subrepresentations over prime fields to extract Euler numbers.

The generating function of a representation is assembled from Euler
characteristics of Jordan-type strata of its subrepresentation varieties.
Each stratum is counted pointwise over several prime fields, the counts are
interpolated by a single polynomial in the field size, and the value at 1 is
taken.  The oracle refuses (NonPolynomialCount) instead of guessing when the
counts do not fit a polynomial with enough redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .exact import LaurentPoly, PolyContext
from .linalg import GF
from .pathalg import QP, eps_derivative
from .quiver import Arrow
from .reps import DecoratedRep, evaluate_element

Vec = Tuple[int, ...]
Mat = Tuple[Vec, ...]


class NonPolynomialCount(ArithmeticError):
    """Point counts across the supplied prime list do not interpolate."""


class BadReduction(ArithmeticError):
    """A prime is unusable: denominators vanish or ranks drop."""


def _to_gf(matrix, p: int) -> Mat:
    f = GF(p)
    return tuple(tuple(f.of(x) for x in row) for row in matrix)


def _rref_gf(rows: List[List[int]], p: int) -> Tuple[Mat, List[int]]:
    red, pivots = linalg.rref([list(r) for r in rows], GF(p))
    clean = [tuple(r) for r in red if any(r)]
    return tuple(clean), pivots


def _span_gf(vectors: Sequence[Vec], p: int) -> Mat:
    if not vectors:
        return ()
    red, _ = _rref_gf([list(v) for v in vectors], p)
    return red


def _in_span_gf(span_rows: Mat, vec: Vec, p: int) -> bool:
    v = list(vec)
    for row in span_rows:
        pivot = next(i for i, x in enumerate(row) if x)
        if v[pivot]:
            c = v[pivot]
            v = [(a - c * b) % p for a, b in zip(v, row)]
    return not any(v)


def _apply_gf(mat: Mat, vec: Vec, p: int) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, vec)) % p for row in mat)


def _mat_mul_gf(a: Mat, b: Mat, p: int) -> Mat:
    if not a or not b:
        return tuple(() for _ in a)
    cols = len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(inner)) % p for j in range(cols))
        for row in a
    )


def _close_under(e: Mat, vectors: List[Vec], p: int) -> Mat:
    """Span closure under the operator e."""
    basis = list(_span_gf(vectors, p))
    queue = list(basis)
    while queue:
        v = queue.pop()
        image = _apply_gf(e, v, p)
        if any(image) and not _in_span_gf(tuple(basis), image, p):
            basis = list(_span_gf(list(basis) + [image], p))
            queue.append(image)
    return tuple(basis)


_SUBMODULE_CACHE: Dict[Tuple[Mat, int], Tuple[Mat, ...]] = {}


def invariant_subspaces(e: Mat, p: int) -> Tuple[Mat, ...]:
    """All e-invariant subspaces of F_p^n, as canonical row-echelon tuples."""
    n = len(e)
    key = (e, p)
    cached = _SUBMODULE_CACHE.get(key)
    if cached is not None:
        return cached
    zero: Mat = ()
    seen = {zero}
    frontier = [zero]
    # enumerate projective representatives: first nonzero coordinate 1
    reps: List[Vec] = []
    for lead in range(n):
        tail_len = n - lead - 1
        count = p ** tail_len
        for code in range(count):
            vec = [0] * n
            vec[lead] = 1
            rest = code
            for pos in range(lead + 1, n):
                vec[pos] = rest % p
                rest //= p
            reps.append(tuple(vec))
    while frontier:
        current = frontier.pop()
        for v in reps:
            if _in_span_gf(current, v, p):
                continue
            bigger = _close_under(e, list(current) + [v], p)
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    result = tuple(sorted(seen, key=lambda s: (len(s), s)))
    _SUBMODULE_CACHE[key] = result
    return result


def _restrict_gf(op: Mat, basis: Mat, p: int) -> Mat:
    """Operator restricted to an invariant row-space basis."""
    if not basis:
        return ()
    f = GF(p)
    mat = [list(col) for col in zip(*basis)]
    cols = []
    for b in basis:
        image = _apply_gf(op, b, p)
        coords = linalg.solve(mat, list(image), f)
        if coords is None:
            raise BadReduction("subspace not invariant during restriction")
        cols.append(coords)
    return tuple(tuple(row) for row in ([list(r) for r in zip(*cols)] if cols else []))


def _nilpotent_counts_gf(op: Mat, p: int) -> Tuple[int, ...]:
    if not op:
        return ()
    counts = linalg.nilpotent_block_counts([list(r) for r in op], GF(p))
    return tuple(counts)


@dataclass
class ReducedRep:
    p: int
    dims: Tuple[int, ...]
    loops: Dict[int, Mat]
    arrows: Dict[Arrow, Mat]
    eps_ops: Dict[int, Mat]  # loop-derivative operator per degree-2 vertex


def reduce_mod_p(qp: QP, rep: DecoratedRep, p: int) -> ReducedRep:
    """Reduce all structure matrices mod p; reject bad reductions."""
    try:
        loops = {i: _to_gf(rep.loops[i], p) for i in rep.loops}
        arrows = {a: _to_gf(rep.arrow(a), p) for a in qp.quiver.arrows}
    except ZeroDivisionError as exc:
        raise BadReduction(str(exc))
    for i, mat in loops.items():
        if mat and linalg.rank([list(r) for r in mat], GF(p)) != linalg.rank(rep.loops[i]):
            raise BadReduction(f"loop rank at vertex {i} drops mod {p}")
    for a, mat in arrows.items():
        if mat and linalg.rank([list(r) for r in mat], GF(p)) != linalg.rank(rep.arrow(a)):
            raise BadReduction(f"arrow rank at {a} drops mod {p}")
    eps_ops = {}
    for k in range(1, qp.quiver.n + 1):
        if qp.quiver.datum.d[k - 1] == 2:
            op = evaluate_element(rep, eps_derivative(qp.potential, k), k, k)
            try:
                eps_ops[k] = _to_gf(op, p)
            except ZeroDivisionError as exc:
                raise BadReduction(str(exc))
    return ReducedRep(p, rep.dims, loops, arrows, eps_ops)


def _jordan_key(red: ReducedRep, qp: QP, vertex: int, basis: Mat) -> Tuple[int, ...]:
    """Jordan block counts of the loop-derivative on ker E / im E inside N."""
    p = red.p
    e_big = red.loops[vertex]
    e_sub = _restrict_gf(e_big, basis, p)
    if not basis:
        return ()
    n_sub = len(basis)
    ker = linalg.kernel_basis([list(r) for r in e_sub], n_sub, GF(p)) if e_sub else []
    im = linalg.column_space_basis([list(r) for r in e_sub], GF(p)) if e_sub else []
    im_span = _span_gf([tuple(v) for v in im], p)
    coset_reps: List[Vec] = []
    current = list(im_span)
    for v in ker:
        tv = tuple(v)
        if not _in_span_gf(tuple(current), tv, p):
            coset_reps.append(tv)
            current = list(_span_gf(current + [tv], p))
    if not coset_reps:
        return ()
    op_sub = _restrict_gf(red.eps_ops[vertex], basis, p)
    f = GF(p)
    cols = []
    basis_cols = [list(c) for c in zip(*(list(im_span) + coset_reps))]
    for v in coset_reps:
        image = _apply_gf(op_sub, v, p)
        coords = linalg.solve(basis_cols, list(image), f)
        if coords is None:
            raise BadReduction("loop derivative does not preserve the socle quotient")
        cols.append(coords[len(im_span):])
    induced = [list(r) for r in zip(*cols)] if cols else []
    return _nilpotent_counts_gf(tuple(tuple(r) for r in induced), p)


def count_strata(qp: QP, red: ReducedRep) -> Dict[Tuple, int]:
    """Point counts of each (dimension vector, Jordan type) stratum."""
    p = red.p
    n = qp.quiver.n
    order = sorted(range(1, n + 1), key=lambda v: red.dims[v - 1])
    arrows_by_pair: Dict[Tuple[int, int], List[Arrow]] = {}
    for a in qp.quiver.arrows:
        arrows_by_pair.setdefault((a.tail, a.head), []).append(a)
    counts: Dict[Tuple, int] = {}
    d = qp.quiver.datum.d

    def candidates(vertex: int, chosen: Dict[int, Mat]) -> List[Mat]:
        dim_v = red.dims[vertex - 1]
        e_v = red.loops[vertex]
        lower: List[Vec] = []
        upper_rows: Optional[Mat] = None
        for u, n_u in chosen.items():
            for a in arrows_by_pair.get((u, vertex), []):
                mat = red.arrows[a]
                for row_vec in n_u:
                    lower.append(_apply_gf(mat, row_vec, p))
            for a in arrows_by_pair.get((vertex, u), []):
                mat = red.arrows[a]
                for t in range(d[vertex - 1]):
                    shifted = _mat_mul_gf(mat, _power_gf(e_v, t, p), p)
                    pre = _preimage_rows(shifted, n_u, dim_v, red.dims[u - 1], p)
                    upper_rows = pre if upper_rows is None else _intersect_rows(
                        upper_rows, pre, dim_v, p
                    )
        lower_span = _close_under(e_v, lower, p) if lower else ()
        if upper_rows is None:
            upper_rows = _span_gf(
                [tuple(1 if i == j else 0 for i in range(dim_v)) for j in range(dim_v)], p
            )
        # the upper space is loop-invariant by the power closure above
        if any(not _in_span_gf(upper_rows, v, p) for v in lower_span):
            return []
        return _between(e_v, lower_span, upper_rows, p)

    results: Dict[Tuple, int] = {}

    def dfs(idx: int, chosen: Dict[int, Mat]):
        if idx == len(order):
            e_key = tuple(len(chosen[v]) for v in range(1, n + 1))
            t_key = tuple(
                (v, _jordan_key(red, qp, v, chosen[v]))
                for v in range(1, n + 1)
                if d[v - 1] == 2
            )
            key = (e_key, t_key)
            results[key] = results.get(key, 0) + 1
            return
        vertex = order[idx]
        for cand in candidates(vertex, chosen):
            chosen[vertex] = cand
            dfs(idx + 1, chosen)
            del chosen[vertex]

    dfs(0, {})
    return results


def _power_gf(mat: Mat, t: int, p: int) -> Mat:
    n = len(mat)
    out = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    for _ in range(t):
        out = _mat_mul_gf(mat, out, p)
    return out


def _preimage_rows(op: Mat, target_rows: Mat, dim_src: int, dim_tgt: int, p: int) -> Mat:
    """Row basis of the preimage of a row-space under a linear map."""
    f = GF(p)
    # x in preimage iff op x lies in span(target): complement test via kernel of
    # (projection onto a complement of target) o op
    comp = _complement_projector(target_rows, dim_tgt, p)
    composed = _mat_mul_gf(comp, op, p) if comp else ()
    if not composed or not any(any(r) for r in composed):
        full = [tuple(1 if i == j else 0 for i in range(dim_src)) for j in range(dim_src)]
        return _span_gf(full, p)
    ker = linalg.kernel_basis([list(r) for r in composed], dim_src, f)
    return _span_gf([tuple(v) for v in ker], p)


def _complement_projector(rows: Mat, dim: int, p: int) -> Mat:
    """Matrix whose kernel is exactly the given row-space."""
    pivots = []
    for row in rows:
        pivots.append(next(i for i, x in enumerate(row) if x))
    out = []
    for i in range(dim):
        if i in pivots:
            continue
        # functional: coefficient of the free coordinate i after reduction
        row = [0] * dim
        row[i] = 1
        for r in rows:
            pivot = next(t for t, x in enumerate(r) if x)
            if r[i]:
                row[pivot] = (-r[i]) % p
        out.append(tuple(row))
    return tuple(out)


def _intersect_rows(a: Mat, b: Mat, dim: int, p: int) -> Mat:
    """Row basis of the intersection of two row-spaces."""
    f = GF(p)
    if not a or not b:
        return ()
    stacked = [list(v) for v in a] + [list(v) for v in b]
    mat = [list(col) for col in zip(*stacked)]
    null = linalg.kernel_basis(mat, len(stacked), f)
    vecs = []
    for coeffs in null:
        combo = [0] * dim
        for c, v in zip(coeffs[: len(a)], a):
            combo = [(x + c * y) % p for x, y in zip(combo, v)]
        vecs.append(tuple(combo))
    return _span_gf(vecs, p)


def _between(e: Mat, lower: Mat, upper: Mat, p: int) -> List[Mat]:
    """All e-invariant subspaces V with span(lower) <= V <= span(upper)."""
    if not upper:
        return [()] if not lower else []
    # quotient coordinates on upper/lower
    upper_list = [list(v) for v in upper]
    basis_cols = [list(c) for c in zip(*upper_list)]
    f = GF(p)
    lower_in_upper: List[Vec] = []
    for v in lower:
        coords = linalg.solve(basis_cols, list(v), f)
        if coords is None:
            return []
        lower_in_upper.append(tuple(coords))
    e_upper = _restrict_gf(e, upper, p)
    lo_span = _span_gf(lower_in_upper, p)
    dim_q = len(upper) - len(lo_span)
    if dim_q == 0:
        return [upper]
    # coordinates on the quotient upper/lower
    reps_idx: List[Vec] = []
    current = list(lo_span)
    dim_u = len(upper)
    for i in range(dim_u):
        unit = tuple(1 if t == i else 0 for t in range(dim_u))
        if not _in_span_gf(tuple(current), unit, p):
            reps_idx.append(unit)
            current = list(_span_gf(current + [unit], p))
    proj_basis = [list(c) for c in zip(*(list(lo_span) + reps_idx))]
    e_quot_cols = []
    for v in reps_idx:
        image = _apply_gf(e_upper, v, p)
        coords = linalg.solve(proj_basis, list(image), f)
        if coords is None:
            raise BadReduction("loop action does not descend to the quotient")
        e_quot_cols.append(coords[len(lo_span):])
    e_quot = tuple(tuple(r) for r in ([list(r) for r in zip(*e_quot_cols)] if e_quot_cols else []))
    out: List[Mat] = []
    for sub in invariant_subspaces(e_quot, p):
        vecs = list(lo_span)
        for coords in sub:
            combo = [0] * dim_u
            for c, rep_vec in zip(coords, reps_idx):
                combo = [(x + c * y) % p for x, y in zip(combo, rep_vec)]
            vecs.append(tuple(combo))
        # back to ambient coordinates
        ambient = []
        for v in vecs:
            combo = [0] * len(upper_list[0])
            for c, row in zip(v, upper_list):
                combo = [(x + c * y) % p for x, y in zip(combo, row)]
            ambient.append(tuple(combo))
        out.append(_span_gf(ambient, p))
    return out


# -- interpolation and assembly -------------------------------------------

def interpolate_at_one(points: Sequence[Tuple[int, int]]) -> Fraction:
    """Value at 1 of the unique interpolating polynomial through the points.

    Requires at least one redundant point: the interpolant must have degree
    at most len(points) - 2, otherwise NonPolynomialCount is raised.
    """
    if len(points) < 3:
        raise NonPolynomialCount("need at least three primes for a redundancy check")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    # Newton's divided differences; top coefficient must vanish
    table = ys[:]
    coeffs = [table[0]]
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    if coeffs[-1] != 0:
        raise NonPolynomialCount(
            f"counts {points} need degree {len(points) - 1}; no redundancy left"
        )
    value = coeffs[-1]
    for level in range(len(coeffs) - 2, -1, -1):
        value = coeffs[level] + (Fraction(1) - xs[level]) * value
    if value.denominator != 1:
        raise NonPolynomialCount(f"Euler number {value} is not an integer")
    return value


def chebyshev_like(ctx: PolyContext, z_name: str, l: int) -> LaurentPoly:
    """f_0 = 1, f_1 = z, f_l = z f_(l-1) - f_(l-2)."""
    f0 = LaurentPoly.const(ctx, 1)
    if l == 0:
        return f0
    f1 = LaurentPoly.var(ctx, z_name)
    for _ in range(l - 1):
        f0, f1 = f1, LaurentPoly.var(ctx, z_name) * f1 - f0
    return f1


@dataclass
class OracleResult:
    f_poly: LaurentPoly
    chi: Dict[Tuple, Fraction]
    used_primes: Tuple[int, ...]
    skipped: Tuple[Tuple[int, str], ...]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


def f_polynomial_oracle(
    qp: QP,
    rep: DecoratedRep,
    ctx: PolyContext,
    y_names: Sequence[str],
    z_names: Dict[int, str],
    primes: Sequence[int] = DEFAULT_PRIMES,
    dim_cap: int = 12,
) -> OracleResult:
    """Generating function of Jordan-type strata of subrepresentation varieties.

    ``z_names[k]`` names the coefficient variable of each degree-2 vertex.
    """
    if any(dk > 2 for dk in qp.quiver.datum.d):
        raise ValueError("stratified counting is implemented for loop degrees <= 2")
    if rep.total_dim() > dim_cap:
        raise ValueError(f"total dimension {rep.total_dim()} exceeds the oracle cap")
    for q in primes:
        if not _is_prime(q):
            raise ValueError(
                f"field size {q} is not prime; modular arithmetic needs prime fields"
            )
    per_prime: Dict[int, Dict[Tuple, int]] = {}
    skipped: List[Tuple[int, str]] = []
    for p in primes:
        try:
            red = reduce_mod_p(qp, rep, p)
            per_prime[p] = count_strata(qp, red)
        except BadReduction as exc:
            skipped.append((p, str(exc)))
    if len(per_prime) < 3:
        raise NonPolynomialCount(
            f"only {len(per_prime)} usable primes after skips {skipped}"
        )
    keys = set()
    for table in per_prime.values():
        keys.update(table)
    chi: Dict[Tuple, Fraction] = {}
    for key in sorted(keys):
        points = [(p, per_prime[p].get(key, 0)) for p in sorted(per_prime)]
        chi[key] = interpolate_at_one(points)
    total = LaurentPoly.zero(ctx)
    for (e_key, t_key), value in chi.items():
        if value == 0:
            continue
        term = LaurentPoly.const(ctx, value)
        for vertex, e_dim in enumerate(e_key, start=1):
            if e_dim:
                term = term * LaurentPoly.var(ctx, y_names[vertex - 1], e_dim)
        for vertex, blocks in t_key:
            for size_idx, count in enumerate(blocks, start=1):
                if count:
                    factor = chebyshev_like(ctx, z_names[vertex], size_idx) ** count
                    term = term * factor
        total = total + term
    return OracleResult(total, chi, tuple(sorted(per_prime)), tuple(skipped))
