"""Point-counting generating function and the kernel sampler."""

from fractions import Fraction

import pytest

from gencluster.exact import LaurentPoly, PolyContext
from gencluster.grassmannian import (
    NonPolynomialCount,
    chebyshev_like,
    f_polynomial_oracle,
    interpolate_at_one,
    invariant_subspaces,
)
from gencluster.jacobian import (
    corner_dimension,
    injective_rep,
    random_kernel_rep,
    stable_quotient,
)
from gencluster.pathalg import QP, CyclicWord, mutate_qp
from gencluster.quiver import Arrow, LoopedQuiver
from gencluster.reps import (
    check_rep,
    direct_sum,
    generalized_simple,
    mutate_rep,
    negative_simple,
    weight_vectors,
)

CTX = PolyContext(("y1", "y2", "z1_1"))


def rank2(d):
    return QP.make(LoopedQuiver.from_pairs(2, d, [(2, 1)]), {})


def test_chebyshev_like_values():
    assert chebyshev_like(CTX, "z1_1", 0).canonical() == "1"
    assert chebyshev_like(CTX, "z1_1", 1).canonical() == "1*z1_1"
    assert chebyshev_like(CTX, "z1_1", 2).canonical() == "-1 + 1*z1_1^2"
    assert chebyshev_like(CTX, "z1_1", 3).canonical() == "-2*z1_1 + 1*z1_1^3"


def test_oracle_simple_degree_one():
    qp = rank2((1, 1))
    res = f_polynomial_oracle(qp, generalized_simple(qp, 1), CTX, ["y1", "y2"], {})
    assert res.f_poly == LaurentPoly.const(CTX, 1) + LaurentPoly.var(CTX, "y1")


def test_oracle_simple_degree_two():
    qp = rank2((2, 1))
    res = f_polynomial_oracle(qp, generalized_simple(qp, 1), CTX, ["y1", "y2"],
                              {1: "z1_1"})
    one = LaurentPoly.const(CTX, 1)
    y1 = LaurentPoly.var(CTX, "y1")
    z = LaurentPoly.var(CTX, "z1_1")
    assert res.f_poly == one + z * y1 + y1 * y1


def test_oracle_multiplicative_on_sums():
    qp = rank2((2, 1))
    m = generalized_simple(qp, 1)
    n = generalized_simple(qp, 2)
    fm = f_polynomial_oracle(qp, m, CTX, ["y1", "y2"], {1: "z1_1"}).f_poly
    fn = f_polynomial_oracle(qp, n, CTX, ["y1", "y2"], {1: "z1_1"}).f_poly
    fs = f_polynomial_oracle(qp, direct_sum(m, n), CTX, ["y1", "y2"], {1: "z1_1"}).f_poly
    assert fs == fm * fn


def test_oracle_decoration_invisible():
    qp = rank2((2, 1))
    res = f_polynomial_oracle(qp, negative_simple(qp, 1), CTX, ["y1", "y2"],
                              {1: "z1_1"})
    assert res.f_poly == LaurentPoly.const(CTX, 1)


def test_oracle_on_mutated_module():
    """F of the substituted simple matches the recursion's first step."""
    qp = rank2((2, 1))
    res = mutate_rep(qp, negative_simple(qp, 1), 1)
    out = f_polynomial_oracle(res.qp, res.rep, CTX, ["y1", "y2"], {1: "z1_1"})
    one = LaurentPoly.const(CTX, 1)
    y1 = LaurentPoly.var(CTX, "y1")
    z = LaurentPoly.var(CTX, "z1_1")
    assert out.f_poly == one + z * y1 + y1 * y1


def test_interpolation_refuses_without_redundancy():
    with pytest.raises(NonPolynomialCount):
        interpolate_at_one([(2, 4), (3, 9)])
    # an exact cubic through four points has no redundancy left
    with pytest.raises(NonPolynomialCount):
        interpolate_at_one([(2, 8), (3, 27), (5, 125), (7, 343)])
    assert interpolate_at_one([(2, 4), (3, 9), (5, 25), (7, 49)]) == 1


def test_invariant_subspace_counts():
    # free module of rank 1 over F_3[e]/(e^2): 0, socle, everything
    e = ((0, 0), (1, 0))
    subs = invariant_subspaces(e, 3)
    assert len(subs) == 3
    # zero loop on a 2-dim space over F_2: all subspaces: 1 + 3 + 1
    zero = ((0, 0), (0, 0))
    assert len(invariant_subspaces(zero, 2)) == 5


def test_stable_quotient_and_injectives():
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(2, 1)])
    qp = QP.make(quiver, {})
    tq = stable_quotient(qp, 3)
    assert tq.dimension() == 3
    i1 = injective_rep(tq, 1)
    assert i1.rep.dims == (1, 1)
    ok, _ = check_rep(qp, i1.rep)
    assert ok
    i2 = injective_rep(tq, 2)
    assert i2.rep.dims == (0, 1)


def test_random_kernel_rep_examples():
    qp = rank2((2, 1))
    rep = random_kernel_rep(qp, (1, 0))
    assert rep.dims == (0, 0) and rep.decoration == (1, 0)
    rep2 = random_kernel_rep(qp, (-1, 2))
    assert weight_vectors(qp, rep2).g_check == (-1, 2)
    # two independent draws produce the same weight data
    rep3 = random_kernel_rep(qp, (-1, 2), rng_seed=1234)
    assert weight_vectors(qp, rep3).g_check == (-1, 2)
    assert rep2.dims == rep3.dims


def test_random_kernel_rep_negative_weight():
    quiver = LoopedQuiver.from_pairs(1, (2,), [])
    qp = QP.make(quiver, {})
    rep = random_kernel_rep(qp, (-1,))
    assert rep.dims == (2,) and rep.decoration == (0,)


def test_corner_dimension_mutation_invariant():
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    a, b, c = Arrow(1, 2, 0), Arrow(2, 3, 0), Arrow(3, 1, 0)
    qp = QP.make(quiver, {CyclicWord.make((c, b, a), (0, 0, 0)): Fraction(1)})
    before = corner_dimension(qp, 2, 6)
    after = corner_dimension(mutate_qp(qp, 2), 2, 6)
    assert before == after


def test_oracle_skips_bad_primes():
    qp = rank2((1, 1))
    rep = generalized_simple(qp, 1)
    rep_scaled = rep
    # denominators divisible by 2 force the oracle off that prime
    from gencluster.reps import DecoratedRep

    m = DecoratedRep.make((1, 1), arrows={Arrow(2, 1, 0): [[Fraction(1, 2)]]})
    res = f_polynomial_oracle(qp, m, CTX, ["y1", "y2"], {})
    assert any(p == 2 for p, _ in res.skipped)
    assert res.f_poly.constant_term() == 1


def test_locally_free_check_both_sides():
    from gencluster.jacobian import locally_free_check

    quiver = LoopedQuiver.from_pairs(2, (2, 1), [(1, 2), (2, 1)])
    a, b = Arrow(1, 2, 0), Arrow(2, 1, 0)
    qp = QP.make(quiver, {
        CyclicWord.make((b, a), (0, 0)): Fraction(1),
        CyclicWord.make((b, a), (1, 0)): Fraction(1),
    })
    report = locally_free_check(stable_quotient(qp, 5))
    assert report.locally_free and report.agree
    # acyclic families are free on both sides
    qp2 = rank2((2, 2))
    report2 = locally_free_check(stable_quotient(qp2, 4))
    assert report2.locally_free and report2.agree
    assert report2.left == report2.right


def test_oracle_rejects_non_prime_field_sizes():
    qp = rank2((1, 1))
    with pytest.raises(ValueError):
        f_polynomial_oracle(qp, generalized_simple(qp, 1), CTX, ["y1", "y2"], {},
                            primes=(2, 3, 4, 5))


def _all_subspaces_gf(dim, p):
    """Every subspace of F_p^dim as a canonical row tuple (naive, tiny dims)."""
    import itertools

    from gencluster.grassmannian import _span_gf

    vectors = [tuple(v) for v in itertools.product(range(p), repeat=dim)]
    seen = set()
    for r in range(dim + 1):
        for combo in itertools.combinations(vectors, r):
            seen.add(_span_gf(list(combo), p))
    return sorted(seen, key=lambda s: (len(s), s))


def test_count_strata_against_naive_enumeration():
    """Independent oracle: filter all subspace tuples directly."""
    from gencluster.grassmannian import (
        _apply_gf,
        _in_span_gf,
        count_strata,
        reduce_mod_p,
    )

    qp = rank2((2, 1))
    res = mutate_rep(qp, negative_simple(qp, 1), 1)  # dims (2, 0)
    rep2 = mutate_rep(res.qp, res.rep, 2)            # dims (2, 2)
    qp2, m = rep2.qp, rep2.rep
    for p in (2, 3):
        red = reduce_mod_p(qp2, m, p)
        expected = {}
        spaces = {
            v: _all_subspaces_gf(m.dims[v - 1], p) for v in (1, 2)
        }
        for n1 in spaces[1]:
            for n2 in spaces[2]:
                chosen = {1: n1, 2: n2}
                ok = True
                for vertex in (1, 2):
                    e_mat = red.loops[vertex]
                    for row in chosen[vertex]:
                        if not _in_span_gf(chosen[vertex], _apply_gf(e_mat, row, p), p):
                            ok = False
                for arrow, mat in red.arrows.items():
                    for row in chosen[arrow.tail]:
                        image = _apply_gf(mat, row, p)
                        if not _in_span_gf(chosen[arrow.head], image, p):
                            ok = False
                if not ok:
                    continue
                from gencluster.grassmannian import _jordan_key

                e_key = (len(n1), len(n2))
                t_key = tuple(
                    (v, _jordan_key(red, qp2, v, chosen[v]))
                    for v in (1, 2)
                    if qp2.quiver.datum.d[v - 1] == 2
                )
                key = (e_key, t_key)
                expected[key] = expected.get(key, 0) + 1
        assert count_strata(qp2, red) == expected, p


def test_oracle_with_nontrivial_jordan_stratum():
    """A module whose loop-derivative operator has a size-2 block weight."""
    quiver = LoopedQuiver.from_pairs(2, (1, 2), [(1, 2), (2, 1)])
    a, b = Arrow(2, 1, 0), Arrow(1, 2, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 1)): Fraction(1)})
    from gencluster.reps import DecoratedRep

    m = DecoratedRep.make(
        (1, 2),
        loops={2: [[0, 0], [0, 0]]},
        arrows={b: [[1], [0]], a: [[0, 1]]},
    )
    ok, why = check_rep(qp, m)
    assert ok, why
    ctx = PolyContext(("y1", "y2", "z2_1"))
    res = f_polynomial_oracle(qp, m, ctx, ["y1", "y2"], {2: "z2_1"})
    one = LaurentPoly.const(ctx, 1)
    y1 = LaurentPoly.var(ctx, "y1")
    y2 = LaurentPoly.var(ctx, "y2")
    z = LaurentPoly.var(ctx, "z2_1")
    expected = one + z * y2 + z * y1 * y2 + (z * z - one) * y1 * y2 * y2
    assert res.f_poly == expected
