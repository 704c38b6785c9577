"""Acceptance gate: every primary criterion at its stated budget.

Each test prints one PASS/FAIL line; run with `pytest -s tests/test_acceptance.py`
or through `gencluster verify <suite>`.
"""

import time

import pytest

from gencluster.verify import run_suite


def _run(criterion: str, suite: str, budget_seconds: float):
    start = time.time()
    results = run_suite(suite)
    elapsed = time.time() - start
    passed = all(r.passed for r in results)
    detail = "; ".join(f"{r.name}: {r.details}" for r in results)
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} "
          f"({elapsed:.1f}s, budget {budget_seconds:.0f}s) {detail}")
    assert passed, detail
    assert elapsed < budget_seconds, (
        f"{criterion} exceeded its budget: {elapsed:.1f}s > {budget_seconds}s"
    )


def test_matrix_quiver_agreement():
    _run("matrix/quiver agreement", "agreement", 5)


def test_involutions():
    _run("involutions", "involutions", 30)


def test_classical_reduction_oracle():
    _run("classical reduction oracle", "classical", 60)


def test_laurent_phenomenon():
    _run("laurent phenomenon", "laurent", 120)


def test_f_g_structure():
    _run("F/g structure", "signs", 120)


def test_interpretation_theorem():
    _run("interpretation theorem", "interpretation", 300)


def test_f_mutation_identity():
    _run("F-mutation identity", "fmutation", 300)


def test_g_vector_mutation_rule():
    _run("g-vector mutation rule", "grule", 60)


def test_h_relations():
    _run("h-relations", "hrelations", 60)


def test_round_trip_io():
    _run("round-trip I/O", "roundtrip", 30)
