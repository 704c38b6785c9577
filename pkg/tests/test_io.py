"""Serialization: export -> import -> export must be byte-identical."""

import json
from fractions import Fraction

from gencluster import io as gio
from gencluster.gca import Seed, explore, mutate_seed
from gencluster.pathalg import QP, CyclicWord, mutate_qp, random_potential
from gencluster.quiver import Arrow, LoopedQuiver
from gencluster.reps import DecoratedRep, generalized_simple, mutate_rep


def test_quiver_round_trip():
    q = LoopedQuiver.from_pairs(3, (2, 1, 3), [(1, 2), (1, 2), (3, 1)],
                                {1: [1, "z1_1", 1], 2: [1, 1], 3: [1, Fraction(2), 2, 1]})
    first = gio.dumps_canonical(gio.quiver_to_dict(q))
    back = gio.quiver_from_dict(json.loads(first))
    second = gio.dumps_canonical(gio.quiver_to_dict(back))
    assert first == second
    assert back == q


def test_qp_round_trip_bit_exact():
    quiver = LoopedQuiver.from_pairs(3, (1, 2, 1), [(1, 2), (2, 3), (3, 1)])
    potential = random_potential(quiver, 4, 5, 7)
    qp = QP(quiver, potential)
    first = gio.dumps_canonical(gio.qp_to_dict(qp))
    back = gio.qp_from_dict(json.loads(first))
    second = gio.dumps_canonical(gio.qp_to_dict(back))
    assert first == second
    assert back.potential == qp.potential


def test_qp_round_trip_after_mutation():
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    a, b, c = Arrow(1, 2, 0), Arrow(2, 3, 0), Arrow(3, 1, 0)
    qp = QP.make(quiver, {CyclicWord.make((c, b, a), (0, 0, 0)): Fraction(1)})
    mutated = mutate_qp(qp, 2)
    first = gio.dumps_canonical(gio.qp_to_dict(mutated))
    back = gio.qp_from_dict(json.loads(first))
    second = gio.dumps_canonical(gio.qp_to_dict(back))
    assert first == second


def test_rep_round_trip():
    quiver = LoopedQuiver.from_pairs(2, (2, 1), [(2, 1)])
    qp = QP.make(quiver, {})
    res = mutate_rep(qp, generalized_simple(qp, 1), 2)
    rep = res.rep
    first = gio.dumps_canonical(gio.rep_to_dict(rep))
    back = gio.rep_from_dict(json.loads(first))
    second = gio.dumps_canonical(gio.rep_to_dict(back))
    assert first == second
    assert back.dims == rep.dims and back.decoration == rep.decoration


def test_seed_round_trip_with_fractional_coefficients():
    s = Seed.initial([[0, 1], [-1, 0]], (2, 1), z={1: [1, Fraction(3, 2), 1]})
    s = mutate_seed(mutate_seed(s, 1), 2)
    first = gio.dumps_canonical(gio.seed_to_dict(s))
    back = gio.seed_from_dict(json.loads(first))
    second = gio.dumps_canonical(gio.seed_to_dict(back))
    assert first == second
    assert back.x == s.x and back.y == s.y and back.b == s.b


def test_seed_round_trip_principal():
    s = Seed.initial([[0, 1], [-1, 0]], (2, 2), principal=True)
    s = mutate_seed(s, 1)
    first = gio.dumps_canonical(gio.seed_to_dict(s))
    back = gio.seed_from_dict(json.loads(first))
    assert gio.dumps_canonical(gio.seed_to_dict(back)) == first


def test_graph_export():
    s = Seed.initial([[0, 1], [-1, 0]], (1, 1))
    graph = explore(s, 8, "unlabeled")
    data = gio.graph_to_dict(graph)
    assert len(data["nodes"]) == 5
    assert all({"from", "to", "k"} <= set(e) for e in data["edges"])
    dot = gio.graph_to_dot(graph)
    assert dot.startswith("graph exchange") and "--" in dot


def test_poly_parse_round_trip():
    s = Seed.initial([[0, 2], [-2, 0]], (1, 2))
    m = mutate_seed(mutate_seed(s, 2), 1)
    for p in m.x:
        assert gio.parse_poly(s.ctx, p.canonical()) == p


def test_detect_kind():
    s = Seed.initial([[0]], (1,))
    assert gio.detect_kind(gio.seed_to_dict(s)) == "seed"
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(2, 1)])
    assert gio.detect_kind(gio.quiver_to_dict(quiver)) == "quiver"
    assert gio.detect_kind(gio.qp_to_dict(QP.make(quiver, {}))) == "qp"
