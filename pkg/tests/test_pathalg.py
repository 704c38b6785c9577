"""Path algebra: derivatives, substitution step, reduction, sampling."""

import random
from fractions import Fraction

import pytest

from gencluster.pathalg import (
    AlgebraContext,
    AlgElement,
    CyclicWord,
    DegeneratePotential,
    PathWord,
    Potential,
    QP,
    arrow_word,
    cyclic_derivative,
    composite_derivative,
    enumerate_cyclic_words,
    eps_derivative,
    idem,
    mutate_qp,
    premutate_qp,
    random_potential,
    split_reduce,
)
from gencluster.quiver import Arrow, LoopedQuiver, TwoCycleError

A, B, C = Arrow(1, 2, 0), Arrow(2, 3, 0), Arrow(3, 1, 0)


def three_cycle(d=(1, 1, 1), coeff=1):
    quiver = LoopedQuiver.from_pairs(3, d, [(1, 2), (2, 3), (3, 1)])
    return QP.make(quiver, {CyclicWord.make((C, B, A), (0, 0, 0)): Fraction(coeff)})


def test_cyclic_derivative_three_cycle():
    qp = three_cycle()
    db = cyclic_derivative(qp.potential, B)
    (word, coeff), = db.terms.items()
    assert coeff == 1
    assert word.arrows == (A, C) and word.head == 2 and word.tail == 3


def test_cyclic_derivative_with_loop():
    # word a eps_2 b with a: 2->1, b: 1->2 and a loop of degree 2 at vertex 2
    quiver = LoopedQuiver.from_pairs(2, (1, 2), [(1, 2), (2, 1)])
    a, b = Arrow(2, 1, 0), Arrow(1, 2, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 1)): Fraction(1)})
    (wb, _), = cyclic_derivative(qp.potential, b).terms.items()
    assert wb.arrows == (a,) and wb.loops == (0, 1)
    (wa, _), = cyclic_derivative(qp.potential, a).terms.items()
    assert wa.arrows == (b,) and wa.loops == (1, 0)
    assert cyclic_derivative(qp.potential, Arrow(1, 2, 9)).is_zero()


def test_eps_derivative_examples():
    quiver = LoopedQuiver.from_pairs(2, (1, 2), [(1, 2), (2, 1)])
    a, b = Arrow(2, 1, 0), Arrow(1, 2, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 1)): Fraction(1)})
    (w, _), = eps_derivative(qp.potential, 2).terms.items()
    assert w.arrows == (b, a) and w.loops == (0, 0, 0)
    assert eps_derivative(qp.potential, 1).is_zero()


def test_eps_derivative_chain_identity_on_representation():
    """eps d_eps(S) = (sum a d_[b eps a]S b) eps as operators on a module."""
    from gencluster.reps import DecoratedRep, check_rep, evaluate_element

    quiver = LoopedQuiver.from_pairs(2, (1, 2), [(1, 2), (2, 1)])
    a, b = Arrow(2, 1, 0), Arrow(1, 2, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 1)): Fraction(1)})
    rep = DecoratedRep.make(
        (1, 2),
        loops={2: [[0, 0], [1, 0]]},
        arrows={b: [[0], [1]], a: [[1, 0]]},
    )
    ok, why = check_rep(qp, rep)
    assert ok, why
    k = 2
    eps = AlgElement.of_word(qp.ctx, idem(k, 1))
    lhs_elem = eps * eps_derivative(qp.potential, k)
    rhs_elem = AlgElement.zero(qp.ctx)
    for a_in in quiver.arrows_into(k):
        for b_out in quiver.arrows_out_of(k):
            part = composite_derivative(qp.potential, b_out, 1, a_in)
            word_a = AlgElement.of_word(qp.ctx, arrow_word(a_in))
            word_b = AlgElement.of_word(qp.ctx, arrow_word(b_out))
            rhs_elem = rhs_elem + word_a * part * word_b
    rhs_elem = rhs_elem * eps
    lhs_mat = evaluate_element(rep, lhs_elem, k, k)
    rhs_mat = evaluate_element(rep, rhs_elem, k, k)
    assert lhs_mat == rhs_mat


def test_premutation_three_cycle():
    qp = three_cycle()
    pre = premutate_qp(qp, 2)
    quiver = pre.qp.quiver
    assert quiver.arrow_count(1, 3) == 1
    assert quiver.arrow_count(2, 1) == 1
    assert quiver.arrow_count(3, 2) == 1
    assert quiver.arrow_count(3, 1) == 1
    assert len(pre.qp.potential.terms) == 2


def test_premutation_zero_potential_gives_only_coupling():
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3)])
    qp = QP.make(quiver, {})
    pre = premutate_qp(qp, 2)
    assert len(pre.qp.potential.terms) == 1


def test_premutation_degree_two_coupling():
    quiver = LoopedQuiver.from_pairs(3, (1, 2, 1), [(1, 2), (2, 3)])
    qp = QP.make(quiver, {})
    pre = premutate_qp(qp, 2)
    assert quiver_count(pre.qp, 1, 3) == 2
    assert len(pre.qp.potential.terms) == 2
    loops_used = sorted(max(w.loops) for w in pre.qp.potential.terms)
    assert loops_used == [0, 1]


def quiver_count(qp, t, h):
    return qp.quiver.arrow_count(t, h)


def test_split_reduce_premutated_three_cycle():
    pre = premutate_qp(three_cycle(), 2)
    result = split_reduce(pre.qp)
    assert result.reduced.potential.is_zero()
    assert {(x.tail, x.head) for x in result.reduced.quiver.arrows} == {(2, 1), (3, 2)}
    assert len(result.trivial.quiver.arrows) == 2
    assert len(result.pairs) == 1


def test_split_reduce_already_reduced():
    qp = three_cycle()
    result = split_reduce(qp)
    assert result.trivial.potential.is_zero()
    assert not result.trivial.quiver.arrows
    assert result.reduced.potential == qp.potential


def test_split_reduce_single_two_cycle():
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(1, 2), (2, 1)])
    a, b = Arrow(1, 2, 0), Arrow(2, 1, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 0)): Fraction(1)})
    result = split_reduce(qp)
    assert len(result.trivial.quiver.arrows) == 2
    assert not result.reduced.quiver.arrows
    assert result.reduced.potential.is_zero()


def test_split_reduce_degenerate():
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(1, 2), (2, 1)])
    qp = QP.make(quiver, {})  # 2-cycle with zero pairing
    with pytest.raises(DegeneratePotential):
        split_reduce(qp)


def test_split_reduce_higher_corrections():
    """A cubic term touching the 2-cycle must be absorbed by substitution."""
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 1), (1, 3), (3, 1)])
    p = Arrow(1, 2, 0)
    q = Arrow(2, 1, 0)
    u = Arrow(1, 3, 0)
    v = Arrow(3, 1, 0)
    terms = {
        CyclicWord.make((p, q), (0, 0)): Fraction(1),
        CyclicWord.make((u, v), (0, 0)): Fraction(1),
        # cubic interaction: p q absorbs a p-u-v word
        CyclicWord.make((p, q, p, q), (0, 0, 0, 0)): Fraction(1),
    }
    qp = QP(quiver, Potential(AlgebraContext((1, 1, 1), 12), terms))
    result = split_reduce(qp)
    assert not result.reduced.quiver.arrows
    assert result.reduced.potential.is_zero()
    # trivial part holds both pairs
    assert len(result.trivial.quiver.arrows) == 4


def test_mutate_qp_three_cycle_and_involution():
    qp = three_cycle()
    reduced = mutate_qp(qp, 2)
    assert reduced.potential.is_zero()
    assert {(x.tail, x.head) for x in reduced.quiver.arrows} == {(2, 1), (3, 2)}
    back = mutate_qp(reduced, 2)
    counts = {(x.tail, x.head) for x in back.quiver.arrows}
    assert counts == {(1, 2), (2, 3), (3, 1)}
    assert len(back.potential.terms) == 1
    (word, coeff), = back.potential.terms.items()
    assert word.arrow_length == 3 and coeff == 1


def test_mutate_qp_no_paths_through_k():
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(2, 1)])
    qp = QP.make(quiver, {})
    out = mutate_qp(qp, 1)
    assert out.potential.is_zero()


def test_cyclic_equivalence_invariance_of_derivatives():
    rng = random.Random(3)
    quiver = LoopedQuiver.from_pairs(3, (2, 1, 2), [(1, 2), (2, 3), (3, 1)])
    ctx = AlgebraContext((2, 1, 2), 12)
    words = enumerate_cyclic_words(quiver, 3, ctx)
    for word in words:
        # CyclicWord.make canonicalizes; build from a rotated slot list
        m = word.arrow_length
        r = rng.randrange(m)
        rotated = CyclicWord.make(
            tuple(word.arrows[(r + i) % m] for i in range(m)),
            tuple(word.loops[(r + i) % m] for i in range(m)),
        )
        assert rotated == word


def test_random_potential_properties():
    acyclic = LoopedQuiver.from_pairs(3, (1, 2, 1), [(1, 2), (2, 3)])
    assert random_potential(acyclic, 4, 3, 0).is_zero()
    cyc = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    s1 = random_potential(cyc, 3, 3, 42)
    s2 = random_potential(cyc, 3, 3, 42)
    assert s1 == s2
    words = enumerate_cyclic_words(cyc, 3, AlgebraContext((1, 1, 1), 12))
    assert len(words) == 1


def test_truncation_loss_marker():
    ctx = AlgebraContext((1, 1, 1), 2)
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    qp = QP(quiver, Potential(ctx, {CyclicWord.make((C, B, A), (0, 0, 0)): Fraction(1)}))
    assert ctx.truncation_losses >= 1
    assert qp.potential.is_zero()


def test_mutate_requires_reduced():
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(1, 2), (2, 1)])
    a, b = Arrow(1, 2, 0), Arrow(2, 1, 0)
    qp = QP.make(quiver, {CyclicWord.make((a, b), (0, 0)): Fraction(1)})
    with pytest.raises(ValueError):
        mutate_qp(qp, 1)


def test_mutation_with_cubic_potential_rank3_degree2():
    """Cyclic triangle with a degree-2 vertex: involution on canonical forms."""
    from gencluster.quiver import mutate_matrix
    from gencluster.verify import qp_fingerprint

    quiver = LoopedQuiver.from_pairs(3, (2, 1, 1), [(1, 2), (2, 3), (3, 1)])
    qp = QP.make(quiver, {CyclicWord.make((C, B, A), (0, 0, 0)): Fraction(1)})
    for k in (1, 2, 3):
        mutated = mutate_qp(qp, k)
        assert mutated.quiver.b_matrix() == mutate_matrix(
            quiver.b_matrix(), quiver.datum, k
        )
        back = mutate_qp(mutated, k)
        assert qp_fingerprint(back) == qp_fingerprint(qp)


def test_random_potential_mutation_preserves_true_invariants():
    """Squared mutation restores counts, matrix and corner dimension; the
    potential representative may differ by a change of arrows (scaling)."""
    from gencluster.jacobian import corner_dimension

    quiver = LoopedQuiver.from_pairs(3, (2, 1, 2), [(1, 2), (2, 3), (3, 1)])
    potential = random_potential(quiver, 4, 3, 0)
    qp = QP(quiver, potential)
    assert qp.is_reduced()
    k = 1
    mutated = mutate_qp(qp, k)
    back = mutate_qp(mutated, k)
    assert back.quiver.b_matrix() == qp.quiver.b_matrix()
    counts = lambda q: sorted(
        (a.tail, a.head) for a in q.quiver.arrows
    )
    assert counts(back) == counts(qp)
    assert corner_dimension(back, k, 5) == corner_dimension(qp, k, 5)
    # same cyclic words survive after canonical relabeling; coefficients
    # may rescale within right-equivalence
    from gencluster.verify import qp_fingerprint

    support = lambda q: {word for word, _ in qp_fingerprint(q)[1]}
    assert support(back) == support(qp)
