"""Independent classical cluster-algebra recursions (all degrees one).

Deliberately separate from the generalized machinery: plain binomial
exchanges, the CA-IV style c/g/F recursions, and principal-coefficient
Y-dynamics, written directly from the degree-one formulas.  Used as the
oracle the generalized pipeline must reduce to when every degree is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exact import InexactDivision, LaurentPoly, PolyContext, laurent_divexact


def _pos(v: int) -> int:
    return v if v > 0 else 0


def classical_matrix_mutation(b: Sequence[Sequence[int]], k: int) -> List[List[int]]:
    n = len(b)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k - 1 or j == k - 1:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + _pos(b[i][k - 1]) * _pos(b[k - 1][j]) - _pos(
                    -b[i][k - 1]
                ) * _pos(-b[k - 1][j])
    return out


@dataclass
class ClassicalState:
    """Coefficient-free cluster (y = 1) plus principal-coefficient records."""

    ctx: PolyContext
    b0: Tuple[Tuple[int, ...], ...]
    b: Tuple[Tuple[int, ...], ...]
    x: Tuple[LaurentPoly, ...]
    c: Tuple[Tuple[int, ...], ...]
    g: Tuple[Tuple[int, ...], ...]
    f: Tuple[LaurentPoly, ...]


def classical_initial(b: Sequence[Sequence[int]]) -> ClassicalState:
    n = len(b)
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    ctx = PolyContext(names)
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return ClassicalState(
        ctx,
        tuple(tuple(int(v) for v in row) for row in b),
        tuple(tuple(int(v) for v in row) for row in b),
        tuple(LaurentPoly.var(ctx, f"x{i}") for i in range(1, n + 1)),
        ident,
        ident,
        tuple(LaurentPoly.const(ctx, 1) for _ in range(n)),
    )


def classical_step(state: ClassicalState, k: int) -> ClassicalState:
    n = len(state.b)
    ctx = state.ctx
    b = state.b

    # coefficient-free exchange: x_k x'_k = prod x^[b_jk]+ + prod x^[-b_jk]+
    plus = LaurentPoly.const(ctx, 1)
    minus = LaurentPoly.const(ctx, 1)
    for j in range(1, n + 1):
        e = b[j - 1][k - 1]
        if e > 0:
            plus = plus * state.x[j - 1] ** e
        elif e < 0:
            minus = minus * state.x[j - 1] ** (-e)
    new_xk = laurent_divexact(plus + minus, state.x[k - 1])
    new_x = list(state.x)
    new_x[k - 1] = new_xk

    # c-vector mutation, degree-one sign-coherent form
    c = state.c
    new_c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if j == k - 1:
                new_c[i][j] = -c[i][j]
            else:
                new_c[i][j] = c[i][j] + c[i][k - 1] * _pos(b[k - 1][j]) + _pos(
                    -c[i][k - 1]
                ) * b[k - 1][j]
    # g-vector mutation
    g = state.g
    new_g = [[g[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        acc = -g[i][k - 1]
        for j in range(1, n + 1):
            acc += _pos(-b[j - 1][k - 1]) * g[i][j - 1]
            acc -= _pos(-c[j - 1][k - 1]) * state.b0[i][j - 1]
        new_g[i][k - 1] = acc
    # F-polynomial mutation
    term_plus = LaurentPoly.const(ctx, 1)
    term_minus = LaurentPoly.const(ctx, 1)
    for j in range(1, n + 1):
        cjk = c[j - 1][k - 1]
        bjk = b[j - 1][k - 1]
        if cjk > 0:
            term_plus = term_plus * LaurentPoly.var(ctx, f"y{j}", cjk)
        elif cjk < 0:
            term_minus = term_minus * LaurentPoly.var(ctx, f"y{j}", -cjk)
        if bjk > 0:
            term_plus = term_plus * state.f[j - 1] ** bjk
        elif bjk < 0:
            term_minus = term_minus * state.f[j - 1] ** (-bjk)
    new_fk = laurent_divexact(term_plus + term_minus, state.f[k - 1])
    new_f = list(state.f)
    new_f[k - 1] = new_fk

    return ClassicalState(
        ctx,
        state.b0,
        tuple(tuple(r) for r in classical_matrix_mutation(b, k)),
        tuple(new_x),
        tuple(tuple(r) for r in new_c),
        tuple(tuple(r) for r in new_g),
        tuple(new_f),
    )


def classical_path(b: Sequence[Sequence[int]], path: Sequence[int]) -> ClassicalState:
    state = classical_initial(b)
    for k in path:
        state = classical_step(state, k)
    return state
