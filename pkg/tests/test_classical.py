"""Degree-one reduction: the generalized pipeline must match the classical one."""

import random

from gencluster.classical import (
    classical_initial,
    classical_matrix_mutation,
    classical_path,
    classical_step,
)
from gencluster.gca import Seed, gf_recursion, mutate_seed
from gencluster.quiver import MutationData, mutate_matrix


def test_classical_matrix_is_degree_one_case():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 5)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-3, 3)
                b[i][j], b[j][i] = v, -v
        datum = MutationData.make((1,) * n)
        k = rng.randint(1, n)
        assert classical_matrix_mutation(b, k) == mutate_matrix(b, datum, k)


def test_pentagon_identity():
    state = classical_path([[0, 1], [-1, 0]], [1, 2, 1, 2, 1])
    assert sorted(p.canonical() for p in state.x) == ["1*x1", "1*x2"]


def test_classical_f_and_g_first_steps():
    state = classical_step(classical_initial([[0, 1], [-1, 0]]), 1)
    assert state.g == ((-1, 0), (1, 1))
    assert state.f[0].canonical() == "1 + 1*y1"


def test_generalized_reduces_to_classical():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(2, 4)
        span = 2 if n == 2 else 1
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-span, span)
                b[i][j], b[j][i] = v, -v
        path = []
        last = 0
        for _ in range(rng.randint(1, 6)):
            k = rng.randint(1, n)
            while k == last:
                k = rng.randint(1, n)
            path.append(k)
            last = k
        state = classical_path(b, path)
        cur = Seed.initial(b, (1,) * n)
        for k in path:
            cur = mutate_seed(cur, k)
        assert [p.canonical() for p in cur.x] == [p.canonical() for p in state.x]
        recs = gf_recursion(Seed.initial(b, (1,) * n, principal=True), path)
        assert recs[-1].g == state.g
        assert recs[-1].c == state.c
        assert [p.canonical() for p in recs[-1].f] == [
            p.canonical() for p in state.f
        ]
