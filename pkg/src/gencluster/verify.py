"""Property suites: involutions, Laurent checks, sign structure, the
representation-theoretic interpretation of g/F data, and the F-identity
across a mutation.  Each suite returns a machine-readable report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .classical import classical_path
from .exact import LaurentPoly, PolyContext
from .gca import (
    GFRecord,
    RationalPair,
    Seed,
    _pair,
    explore,
    gf_recursion,
    h_relation_check,
    mutate_seed,
    separation,
    laurent_check,
)
from .grassmannian import DEFAULT_PRIMES, NonPolynomialCount, f_polynomial_oracle
from .pathalg import QP, CyclicWord, mutate_qp, random_potential
from .quiver import Arrow, LoopedQuiver, MutationData, mutate_matrix, mutate_quiver
from .reps import (
    DecoratedRep,
    RepMutationResult,
    check_rep,
    generalized_simple,
    mutate_rep,
    negative_simple,
    weight_vectors,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "elapsed": round(self.elapsed, 3),
        }


def _timed(name: str, fn) -> CheckResult:
    start = time.time()
    try:
        ok, details = fn()
    except Exception as exc:  # surfaced, never silently green
        return CheckResult(name, False, f"exception: {exc!r}", time.time() - start)
    return CheckResult(name, ok, details, time.time() - start)


# -- shared example library --------------------------------------------------

def random_two_acyclic(rng: random.Random, n: int, max_mult: int, max_d: int) -> LoopedQuiver:
    pairs = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            m = rng.randint(-max_mult, max_mult)
            if m > 0:
                pairs += [(i, j)] * m
            elif m < 0:
                pairs += [(j, i)] * (-m)
    d = tuple(rng.randint(1, max_d) for _ in range(n))
    return LoopedQuiver.from_pairs(n, d, pairs)


def three_cycle_qp() -> QP:
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    a, b, c = Arrow(1, 2, 0), Arrow(2, 3, 0), Arrow(3, 1, 0)
    return QP.make(quiver, {CyclicWord.make((c, b, a), (0, 0, 0)): Fraction(1)})


def rank2_qp(d: Tuple[int, int]) -> QP:
    quiver = LoopedQuiver.from_pairs(2, d, [(2, 1)])
    return QP.make(quiver, {})


def qp_fingerprint(qp: QP) -> Tuple:
    """Arrow counts plus the potential in canonically relabeled arrows."""
    arrows = sorted(qp.quiver.arrows)
    rename = {}
    counters: Dict[Tuple[int, int], int] = {}
    for a in arrows:
        o = counters.get((a.tail, a.head), 0)
        counters[(a.tail, a.head)] = o + 1
        rename[a] = Arrow(a.tail, a.head, o)
    terms = []
    for word, coeff in qp.potential.terms.items():
        new_word = CyclicWord.make([rename[a] for a in word.arrows], word.loops)
        terms.append((new_word.sort_key(), coeff))
    counts = tuple(sorted(counters.items()))
    return (counts, tuple(sorted(terms)))


def rep_invariants(qp: QP, rep: DecoratedRep) -> Tuple:
    wv = weight_vectors(qp, rep)
    return (rep.dims, rep.decoration, wv.g, wv.g_check)


def transported_negative(qp: QP, path: Sequence[int], l: int):
    """Mutate the target's negative simple back along the reversed path."""
    qps = [qp]
    for k in path:
        qps.append(mutate_qp(qps[-1], k))
    current_qp = qps[-1]
    rep = negative_simple(current_qp, l)
    for k in reversed(path):
        result = mutate_rep(current_qp, rep, k)
        current_qp, rep = result.qp, result.rep
    return current_qp, rep


# -- suites -------------------------------------------------------------------

def suite_involutions(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []

    def matrices():
        for _ in range(200):
            n = rng.randint(2, 6)
            b = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = rng.randint(-3, 3)
                    b[i][j], b[j][i] = v, -v
            datum = MutationData.make([rng.randint(1, 3) for _ in range(n)])
            for k in range(1, n + 1):
                if mutate_matrix(mutate_matrix(b, datum, k), datum, k) != b:
                    return False, f"matrix involution fails at {b}, k={k}"
        return True, "200 random matrices"

    def seeds():
        for _ in range(200):
            n = rng.randint(2, 4)
            b = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = rng.randint(-2, 2)
                    b[i][j], b[j][i] = v, -v
            d = [rng.randint(1, 3) for _ in range(n)]
            s = Seed.initial(b, d, principal=rng.random() < 0.5)
            k = rng.randint(1, n)
            twice = mutate_seed(mutate_seed(s, k), k)
            if not (twice.x == s.x and twice.y == s.y and twice.b == s.b):
                return False, f"seed involution fails for {b}, d={d}, k={k}"
        return True, "200 random seeds"

    def qps():
        library = [
            (three_cycle_qp(), 2),
            (three_cycle_qp(), 1),
            (rank2_qp((2, 1)), 1),
            (rank2_qp((2, 2)), 1),
            (rank2_qp((2, 2)), 2),
        ]
        for qp, k in library:
            twice = mutate_qp(mutate_qp(qp, k), k)
            if qp_fingerprint(twice) != qp_fingerprint(qp):
                return False, f"QP involution fingerprint mismatch at k={k}"
        return True, f"{len(library)} curated QPs"

    def reps():
        library = []
        for d in ((2, 1), (2, 2)):
            qp = rank2_qp(d)
            for l in (1, 2):
                library.append((qp, negative_simple(qp, l)))
                library.append((qp, generalized_simple(qp, l)))
        qp3 = three_cycle_qp()
        for l in (1, 2, 3):
            library.append((qp3, generalized_simple(qp3, l)))
        for qp, rep in library:
            for k in range(1, qp.quiver.n + 1):
                first = mutate_rep(qp, rep, k)
                second = mutate_rep(first.qp, first.rep, k)
                if rep_invariants(second.qp, second.rep) != rep_invariants(qp, rep):
                    return False, f"rep involution fails at k={k}"
        return True, f"{len(library)} curated reps, all vertices"

    out.append(_timed("matrix involution", matrices))
    out.append(_timed("seed involution", seeds))
    out.append(_timed("qp involution (canonical forms)", qps))
    out.append(_timed("rep involution (invariants)", reps))
    return out


TERM_CAP = 400


def _random_path(rng: random.Random, n: int, length: int) -> List[int]:
    path = []
    last = 0
    for _ in range(length):
        k = rng.randint(1, n)
        while k == last:
            k = rng.randint(1, n)
        path.append(k)
        last = k
    return path


class _TooBig(Exception):
    pass


def _step_cost(sizes: Sequence[int], exponents: Sequence[int],
               budget: int = 300_000) -> None:
    cost = 1
    for size, e in zip(sizes, exponents):
        cost *= max(size, 1) ** e
        if cost > budget:
            raise _TooBig()


def _guard_seed_step(seed0: Seed, k: int) -> None:
    dk = seed0.datum.d[k - 1]
    exponents = [
        dk * POS_INT(-seed0.b[j][k - 1]) + dk * POS_INT(seed0.b[j][k - 1])
        for j in range(seed0.n)
    ]
    _step_cost([len(p.terms) for p in seed0.x], exponents)


def POS_INT(v: int) -> int:
    return v if v > 0 else 0


def _capped_laurent_walk(seed0: Seed, path: Sequence[int],
                         cap: int = TERM_CAP) -> Optional[str]:
    """None when every step is Laurent with z-integer coefficients; a message
    on violation; raises _TooBig when the expansion exceeds the cap."""
    current = seed0
    for step, k in enumerate(path):
        _guard_seed_step(current, k)
        current = mutate_seed(current, k)
        poly = current.x[k - 1]
        if len(poly.terms) > cap:
            raise _TooBig()
        for exp, coeff in poly.terms.items():
            if coeff.denominator != 1:
                return f"step {step}: non-integer coefficient {coeff}"
            for idx, power in enumerate(exp):
                if power and poly.ctx.names[idx].startswith("y"):
                    return f"step {step}: stray y-variable"
    return None


def suite_laurent(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []

    def rank2_exhaustive():
        # single-edge quiver with every degree combination, double edge at
        # degree one (higher weights blow past desk scale at length 8)
        cases = [(1, d) for d in ((1, 1), (2, 1), (1, 2), (2, 2))] + [(2, (1, 1))]
        for b12, d in cases:
            s = Seed.initial([[0, b12], [-b12, 0]], d)
            for start in (1, 2):
                path = [(start + i) % 2 + 1 for i in range(8)]
                report = laurent_check(s, path)
                if not report.ok:
                    return False, f"b={b12}, d={d}: {report.violations[:1]}"
        return True, "rank 2 exhaustive paths of length 8, five families"

    def rank3_sampled():
        completed = 0
        redrawn = 0
        while completed < 100:
            b = [[0] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(i + 1, 3):
                    v = rng.randint(-1, 1)
                    b[i][j], b[j][i] = v, -v
            d = [rng.randint(1, 2) for _ in range(3)]
            s = Seed.initial(b, d)
            path = _random_path(rng, 3, 8)
            try:
                violation = _capped_laurent_walk(s, path)
            except _TooBig:
                redrawn += 1
                continue
            if violation:
                return False, f"b={b}, d={d}, path={path}: {violation}"
            completed += 1
        return True, f"rank 3, 100 length-8 paths ({redrawn} redraws past the size cap)"

    out.append(_timed("laurent rank 2", rank2_exhaustive))
    out.append(_timed("laurent rank 3", rank3_sampled))
    return out


def _unique_max_monomial(ctx: PolyContext, f: LaurentPoly, n: int) -> Optional[Fraction]:
    """Coefficient of the componentwise-maximal y-monomial, or None."""
    y_idx = [ctx.index[f"y{i}"] for i in range(1, n + 1)]
    best = None
    for exp in f.terms:
        vec = tuple(exp[i] for i in y_idx)
        if best is None:
            best = vec
        else:
            best = tuple(max(a, b) for a, b in zip(best, vec))
    hits = [exp for exp in f.terms if tuple(exp[i] for i in y_idx) == best]
    if len(hits) != 1:
        return None
    return f.terms[hits[0]]


def _capped_records(seed0: Seed, path: Sequence[int],
                    cap: int = TERM_CAP) -> GFRecord:
    from .gca import gf_initial, gf_step

    record = gf_initial(seed0)
    for k in path:
        dk = seed0.datum.d[k - 1]
        exponents = [
            dk * (POS_INT(record.b[j][k - 1]) + POS_INT(-record.b[j][k - 1]))
            for j in range(seed0.n)
        ]
        _step_cost([len(f.terms) for f in record.f], exponents)
        record = gf_step(seed0, record, k)
        if any(len(f.terms) > cap for f in record.f):
            raise _TooBig()
    return record


def suite_signs(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []
    cases = [
        ([[0, 1], [-1, 0]], (2, 1)),
        ([[0, 1], [-1, 0]], (2, 2)),
        ([[0, 2], [-2, 0]], (1, 1)),
        ([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], (2, 1, 2)),
        ([[0, 1, -1], [-1, 0, 1], [1, -1, 0]], (1, 2, 1)),
    ]

    def sampled_records(s: Seed):
        n = s.n
        produced = 0
        while produced < 12:
            path = _random_path(rng, n, rng.randint(1, 6))
            try:
                yield path, _capped_records(s, path)
            except _TooBig:
                continue
            produced += 1

    def f_structure():
        for b, d in cases:
            s = Seed.initial(b, d, principal=True)
            n = s.n
            for path, rec in sampled_records(s):
                for l in range(n):
                    f = rec.f[l]
                    if f.constant_term() != 1:
                        return False, f"constant term != 1 on path {path}"
                    if _unique_max_monomial(s.ctx, f, n) != 1:
                        return False, f"maximal monomial not unique/1 on path {path}"
        return True, "constant terms and maximal monomials"

    def g_properties():
        for b, d in cases:
            s = Seed.initial(b, d, principal=True)
            n = s.n
            for path, rec in sampled_records(s):
                for i in range(n):
                    signs = {1 if rec.g[i][l] > 0 else (-1 if rec.g[i][l] < 0 else 0)
                             for l in range(n)}
                    if 1 in signs and -1 in signs:
                        return False, f"sign coherence fails on path {path}, row {i+1}"
                det = _det_int(rec.g)
                if det not in (1, -1):
                    return False, f"|det G| != 1 on path {path}: {det}"
        return True, "sign coherence and unimodular G"

    out.append(_timed("F structure", f_structure))
    out.append(_timed("g sign coherence / det", g_properties))
    return out


def _det_int(matrix: Sequence[Sequence[int]]) -> int:
    mat = [[Fraction(v) for v in row] for row in matrix]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            factor = mat[r][col] * inv
            if factor:
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    assert det.denominator == 1
    return int(det)


def interpretation_cases() -> List[Tuple[QP, List[int]]]:
    cases = []
    for d in ((2, 1), (2, 2)):
        qp = rank2_qp(d)
        for start in (1, 2):
            for length in (1, 2, 3, 4):
                path = [(start + i) % 2 + 1 for i in range(length)]
                cases.append((qp, path))
    return cases


def suite_interpretation(seed: int = 0, dim_cap: int = 8,
                         primes: Sequence[int] = DEFAULT_PRIMES) -> List[CheckResult]:
    out = []

    def run():
        checked = 0
        skipped = 0
        for qp, path in interpretation_cases():
            n = qp.quiver.n
            b = qp.quiver.b_matrix()
            d = qp.quiver.datum.d
            s = Seed.initial(b, d, principal=True)
            rec = gf_recursion(s, path)[-1]
            for l in range(1, n + 1):
                final_qp, rep = transported_negative(qp, path, l)
                if final_qp.quiver.b_matrix() != b:
                    return False, f"transport changed the matrix on {path}"
                wv = weight_vectors(final_qp, rep)
                g_rec = tuple(rec.g[i][l - 1] for i in range(n))
                if wv.g_check != g_rec:
                    return False, (
                        f"g mismatch on d={d} path={path} l={l}: "
                        f"{wv.g_check} vs {g_rec}"
                    )
                if rep.total_dim() > dim_cap:
                    skipped += 1
                    continue
                z_names = {
                    k: f"z{k}_1" for k in range(1, n + 1) if d[k - 1] == 2
                }
                oracle = f_polynomial_oracle(
                    final_qp, rep, s.ctx, [f"y{i}" for i in range(1, n + 1)],
                    z_names, primes=primes, dim_cap=dim_cap,
                )
                if oracle.f_poly != rec.f[l - 1]:
                    return False, (
                        f"F mismatch on d={d} path={path} l={l}: "
                        f"{oracle.f_poly.canonical()} vs {rec.f[l - 1].canonical()}"
                    )
                checked += 1
        return True, f"{checked} (g,F) pairs verified, {skipped} above the F cap"

    out.append(_timed("interpretation of g and F", run))
    return out


def suite_fmutation(seed: int = 0, primes: Sequence[int] = DEFAULT_PRIMES) -> List[CheckResult]:
    out = []

    def run():
        pairs = 0
        excluded = []
        log: List[str] = []
        for d in ((2, 1), (2, 2), (1, 1)):
            qp = rank2_qp(d)
            reps_lib = [
                negative_simple(qp, 1),
                negative_simple(qp, 2),
                generalized_simple(qp, 1),
                generalized_simple(qp, 2),
            ]
            for k in (1, 2):
                for rep in reps_lib:
                    outcome = _check_f_mutation(qp, rep, k, primes)
                    if outcome is None:
                        excluded.append((d, k))
                        log.append(f"excluded d={d} k={k}: oracle refusal")
                        continue
                    if not outcome:
                        return False, f"F-mutation identity fails at d={d}, k={k}"
                    pairs += 1
        if pairs < 10:
            return False, f"only {pairs} verified pairs (need >= 10); log={log}"
        return True, f"{pairs} pairs verified, {len(excluded)} excluded by refusal"

    out.append(_timed("F-mutation identity", run))
    return out


def _check_f_mutation(qp: QP, rep: DecoratedRep, k: int,
                      primes: Sequence[int]) -> Optional[bool]:
    n = qp.quiver.n
    d = qp.quiver.datum.d
    dk = d[k - 1]
    b = qp.quiver.b_matrix()
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    z_names = {i: f"z{i}_1" for i in range(1, n + 1) if d[i - 1] == 2}
    names += sorted(z_names.values())
    ctx = PolyContext(tuple(names))
    y_names = [f"y{i}" for i in range(1, n + 1)]
    try:
        f_before = f_polynomial_oracle(qp, rep, ctx, y_names, z_names, primes=primes)
        mutated = mutate_rep(qp, rep, k)
        f_after = f_polynomial_oracle(
            mutated.qp, mutated.rep, ctx, y_names, z_names, primes=primes
        )
    except NonPolynomialCount:
        return None
    wv = weight_vectors(qp, rep)
    wv2 = weight_vectors(mutated.qp, mutated.rep)

    def zsum_of(pair_yk: RationalPair) -> RationalPair:
        total = _pair(LaurentPoly.zero(ctx))
        for s in range(dk + 1):
            if s in (0, dk):
                z = _pair(LaurentPoly.const(ctx, 1))
            else:
                z = _pair(LaurentPoly.var(ctx, z_names[k]))
            total = total + z * pair_yk ** s
        return total

    y_k = _pair(LaurentPoly.var(ctx, f"y{k}"))
    zsum = zsum_of(y_k)
    y_images: List[RationalPair] = []
    for i in range(1, n + 1):
        if i == k:
            y_images.append(y_k ** (-1))
        else:
            bki = b[k - 1][i - 1]
            value = _pair(LaurentPoly.var(ctx, f"y{i}")) * (
                y_k ** max(bki, 0)
            ) ** dk
            value = value * (zsum ** (-bki))
            y_images.append(value)
    zsum_prime = zsum_of(y_images[k - 1])
    lhs = (zsum ** (-wv.beta_check_plus[k - 1])) * _pair(f_before.f_poly)
    rhs = (zsum_prime ** (-wv2.beta_check_plus[k - 1])) * _subst_pair(
        f_after.f_poly, y_images, ctx
    )
    return lhs == rhs


def _subst_pair(poly: LaurentPoly, y_images: List[RationalPair],
                ctx: PolyContext) -> RationalPair:
    total = _pair(LaurentPoly.zero(ctx))
    for exp, coeff in poly.terms.items():
        term = _pair(LaurentPoly.const(ctx, coeff))
        for idx, power in enumerate(exp):
            if not power:
                continue
            name = ctx.names[idx]
            if name.startswith("y"):
                term = term * (y_images[int(name[1:]) - 1] ** power)
            else:
                term = term * _pair(LaurentPoly.var(ctx, name, power))
        total = total + term
    return total


def suite_grule(seed: int = 0) -> List[CheckResult]:
    out = []

    def run():
        checked = 0
        for d in ((2, 1), (2, 2), (1, 1)):
            qp = rank2_qp(d)
            b = qp.quiver.b_matrix()
            reps_lib = [
                negative_simple(qp, 1), negative_simple(qp, 2),
                generalized_simple(qp, 1), generalized_simple(qp, 2),
            ]
            for k in (1, 2):
                dk = d[k - 1]
                for rep in reps_lib:
                    wv = weight_vectors(qp, rep)
                    res = mutate_rep(qp, rep, k)
                    wv2 = weight_vectors(res.qp, res.rep)
                    for i in range(1, 3):
                        if i == k:
                            if wv2.g[i - 1] != -wv.g[k - 1]:
                                return False, f"g'(k) != -g(k) at d={d} k={k}"
                            if wv2.g_check[i - 1] != -wv.g_check[k - 1]:
                                return False, f"gcheck'(k) fails at d={d} k={k}"
                        else:
                            expect = wv.g[i - 1] + dk * max(-b[i - 1][k - 1], 0) * (
                                wv.beta_minus[k - 1]
                            ) - dk * max(b[i - 1][k - 1], 0) * wv.beta_plus[k - 1]
                            if wv2.g[i - 1] != expect:
                                return False, f"g rule fails at d={d} k={k} i={i}"
                            expect_c = wv.g_check[i - 1] + dk * max(
                                -b[k - 1][i - 1], 0
                            ) * wv.beta_check_minus[k - 1] - dk * max(
                                b[k - 1][i - 1], 0
                            ) * wv.beta_check_plus[k - 1]
                            if wv2.g_check[i - 1] != expect_c:
                                return False, f"gcheck rule fails at d={d} k={k} i={i}"
                    # g(k) = beta'_+(k) - beta_+(k)
                    if wv.g[k - 1] != wv2.beta_plus[k - 1] - wv.beta_plus[k - 1]:
                        return False, f"g(k) = beta'_+ - beta_+ fails at d={d} k={k}"
                    # dimension formula
                    into = sum(
                        rep.dims[a.tail - 1] for a in qp.quiver.arrows_into(k)
                    )
                    expect_dim = dk * into - rep.dims[k - 1] + dk * wv.beta_plus[
                        k - 1
                    ] + dk * wv.beta_check_minus[k - 1]
                    if res.rep.dims[k - 1] != expect_dim:
                        return False, f"dimension formula fails at d={d} k={k}"
                    checked += 1
        return True, f"{checked} mutations checked"

    out.append(_timed("g mutation rule + dimension formula", run))
    return out


def suite_hrelations(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []

    def run():
        cases = [
            ([[0, 1], [-1, 0]], (2, 1), [1, 2, 1]),
            ([[0, 1], [-1, 0]], (2, 2), [1, 2, 1]),
            ([[0, 1], [-1, 0]], (1, 1), [1, 2, 1, 2]),
            ([[0, 1], [-1, 0]], (2, 1), [2, 1, 2]),
        ]
        for b, d, path in cases:
            s = Seed.initial(b, d, principal=True)
            for l in range(1, len(b) + 1):
                if not h_relation_check(s, path, l):
                    return False, f"h relation fails: b={b}, d={d}, path={path}, l={l}"
        return True, f"{len(cases)} paths, all components"

    out.append(_timed("h relations", run))
    return out


def suite_classical(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []

    def run():
        completed = 0
        redrawn = 0
        while completed < 50:
            n = rng.randint(2, 4)
            span = 2 if n == 2 else 1
            b = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = rng.randint(-span, span)
                    b[i][j], b[j][i] = v, -v
            path = _random_path(rng, n, rng.randint(1, 8))
            seed0 = Seed.initial(b, (1,) * n)
            try:
                cur = seed0
                for k in path:
                    _guard_seed_step(cur, k)
                    cur = mutate_seed(cur, k)
                    if any(len(p.terms) > TERM_CAP for p in cur.x):
                        raise _TooBig()
            except _TooBig:
                redrawn += 1
                continue
            state = classical_path(b, path)
            if [p.canonical() for p in cur.x] != [p.canonical() for p in state.x]:
                return False, f"x mismatch at b={b}, path={path}"
            recs = gf_recursion(Seed.initial(b, (1,) * n, principal=True), path)
            if recs[-1].g != state.g or recs[-1].c != state.c:
                return False, f"g/c mismatch at b={b}, path={path}"
            if [p.canonical() for p in recs[-1].f] != [
                p.canonical() for p in state.f
            ]:
                return False, f"F mismatch at b={b}, path={path}"
            completed += 1
        return True, (
            f"50 random paths against the classical recursion "
            f"({redrawn} redraws past the size cap)"
        )

    out.append(_timed("classical reduction oracle", run))
    return out


def suite_quiver_agreement(seed: int = 0) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []

    def run():
        for _ in range(200):
            quiver = random_two_acyclic(rng, rng.randint(2, 6), 3, 3)
            for k in range(1, quiver.n + 1):
                left = mutate_quiver(quiver, k).b_matrix()
                right = mutate_matrix(quiver.b_matrix(), quiver.datum, k)
                if left != right:
                    return False, f"disagreement at n={quiver.n}, k={k}"
        return True, "200 random quivers, all vertices"

    out.append(_timed("matrix/quiver agreement", run))
    return out


def suite_oracle(seed: int = 0) -> List[CheckResult]:
    out = []

    def run():
        from .reps import direct_sum

        for d in ((1, 1), (2, 1)):
            qp = rank2_qp(d)
            names = ["y1", "y2"] + (["z1_1"] if 2 in d else [])
            ctx = PolyContext(tuple(names))
            z_names = {i: f"z{i}_1" for i in (1, 2) if d[i - 1] == 2}
            e1 = generalized_simple(qp, 1)
            r1 = f_polynomial_oracle(qp, e1, ctx, ["y1", "y2"], z_names)
            expected = LaurentPoly.const(ctx, 1) + LaurentPoly.var(ctx, "y1")
            if d[0] == 2:
                expected = expected + LaurentPoly.var(ctx, "z1_1") * LaurentPoly.var(
                    ctx, "y1"
                ) + LaurentPoly.var(ctx, "y1", 2) - LaurentPoly.var(ctx, "y1")
            if r1.f_poly != expected:
                return False, f"F(E1) wrong for d={d}: {r1.f_poly.canonical()}"
            both = direct_sum(e1, generalized_simple(qp, 2))
            r_both = f_polynomial_oracle(qp, both, ctx, ["y1", "y2"], z_names)
            r2 = f_polynomial_oracle(
                qp, generalized_simple(qp, 2), ctx, ["y1", "y2"], z_names
            )
            if r_both.f_poly != r1.f_poly * r2.f_poly:
                return False, f"multiplicativity fails for d={d}"
        return True, "generalized simples and direct sums"

    out.append(_timed("oracle self-checks", run))
    return out


def suite_roundtrip(seed: int = 0) -> List[CheckResult]:
    out = []

    def run():
        import json

        from . import io as gio
        from .gca import explore
        from .pathalg import random_potential, QP as QPc

        rng = random.Random(seed)
        quiver = random_two_acyclic(rng, 3, 2, 2)
        payloads = []
        payloads.append(("quiver", gio.quiver_to_dict(quiver), gio.quiver_from_dict,
                         gio.quiver_to_dict))
        qp = QPc(quiver, random_potential(quiver, 4, 4, seed))
        payloads.append(("qp", gio.qp_to_dict(qp), gio.qp_from_dict, gio.qp_to_dict))
        d = quiver.datum.d
        s = Seed.initial(quiver.b_matrix(), d)
        for k in (1, 2):
            s = mutate_seed(s, k)
        payloads.append(("seed", gio.seed_to_dict(s), gio.seed_from_dict,
                         gio.seed_to_dict))
        qp2 = rank2_qp((2, 1))
        res = mutate_rep(qp2, generalized_simple(qp2, 1), 2)
        payloads.append(("rep", gio.rep_to_dict(res.rep), gio.rep_from_dict,
                         gio.rep_to_dict))
        graph = explore(Seed.initial([[0, 1], [-1, 0]], (1, 1)), 6, "unlabeled")
        graph_dict = gio.graph_to_dict(graph)
        first = gio.dumps_canonical(graph_dict)
        if gio.dumps_canonical(json.loads(first)) != first:
            return False, "graph dump is not canonical"
        for name, data, loads, dumps in payloads:
            first = gio.dumps_canonical(data)
            again = gio.dumps_canonical(dumps(loads(json.loads(first))))
            if first != again:
                return False, f"{name} round trip differs"
        return True, "quiver, qp, seed, rep, graph"

    out.append(_timed("round-trip serialization", run))
    return out


SUITES = {
    "involutions": suite_involutions,
    "laurent": suite_laurent,
    "signs": suite_signs,
    "interpretation": suite_interpretation,
    "fmutation": suite_fmutation,
    "grule": suite_grule,
    "hrelations": suite_hrelations,
    "classical": suite_classical,
    "agreement": suite_quiver_agreement,
    "oracle": suite_oracle,
    "roundtrip": suite_roundtrip,
}


def run_suite(name: str, seed: int = 0) -> List[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed)
