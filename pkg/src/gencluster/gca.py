"""Seeds with reciprocal exchange polynomials: mutation, recursions, characters.

Cluster variables are kept as honest Laurent polynomials in the initial
cluster (exact division enforces the Laurent property at every step), with
coefficients taken in a tropical semifield over the frozen z-symbols, or over
(y, z) in principal-coefficients mode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .exact import (
    InexactDivision,
    LaurentPoly,
    PolyContext,
    TropicalValue,
    laurent_divexact,
)
from .quiver import MutationData, canonical_z_name

POS = lambda v: v if v > 0 else 0


class SeedError(ValueError):
    pass


def _check_sign_pattern(b: Sequence[Sequence[int]]) -> None:
    n = len(b)
    for row in b:
        if len(row) != n:
            raise SeedError("exchange matrix must be square")
    for i in range(n):
        if b[i][i] != 0:
            raise SeedError("diagonal entries must vanish")
        for j in range(n):
            if (b[i][j] > 0) != (b[j][i] < 0):
                raise SeedError(f"sign pattern fails at ({i + 1},{j + 1})")


def seed_context(datum: MutationData, principal: bool) -> Tuple[PolyContext, Tuple[str, ...]]:
    """Master polynomial context plus the tropical generator names."""
    n = datum.n
    names = [f"x{i}" for i in range(1, n + 1)]
    names += [f"y{i}" for i in range(1, n + 1)]
    z_names = datum.symbolic_names()
    names += z_names
    ctx = PolyContext(names)
    gens = tuple([f"y{i}" for i in range(1, n + 1)] + z_names) if principal else tuple(z_names)
    return ctx, gens


@dataclass(frozen=True)
class Seed:
    """Cluster of Laurent polynomials, tropical coefficients, exchange matrix."""

    ctx: PolyContext
    trop_ctx: PolyContext
    datum: MutationData
    b: Tuple[Tuple[int, ...], ...]
    x: Tuple[LaurentPoly, ...]
    y: Tuple[TropicalValue, ...]
    history: Tuple[int, ...] = ()

    @staticmethod
    def initial(b: Sequence[Sequence[int]], d: Sequence[int], z=None,
                principal: bool = False) -> "Seed":
        datum = MutationData.make(d, z)
        _check_sign_pattern(b)
        if len(b) != datum.n:
            raise SeedError("matrix size differs from the mutation data")
        ctx, gens = seed_context(datum, principal)
        trop_ctx = PolyContext(gens)
        n = datum.n
        x = tuple(LaurentPoly.var(ctx, f"x{i}") for i in range(1, n + 1))
        if principal:
            y = tuple(TropicalValue.generator(trop_ctx, f"y{i}") for i in range(1, n + 1))
        else:
            y = tuple(TropicalValue.one(trop_ctx) for _ in range(n))
        bb = tuple(tuple(int(v) for v in row) for row in b)
        return Seed(ctx, trop_ctx, datum, bb, x, y)

    @property
    def n(self) -> int:
        return self.datum.n

    def z_laurent(self, k: int, s: int) -> LaurentPoly:
        v = self.datum.z_value(k, s)
        if isinstance(v, str):
            return LaurentPoly.var(self.ctx, v)
        return LaurentPoly.const(self.ctx, v)

    def z_trop(self, k: int, s: int) -> TropicalValue:
        v = self.datum.z_value(k, s)
        if isinstance(v, str):
            return TropicalValue.generator(self.trop_ctx, v)
        if v <= 0:
            raise SeedError("numeric z-values must be positive in a semifield")
        return TropicalValue.one(self.trop_ctx)

    def y_hat_pair(self, k: int) -> "RationalPair":
        """y_k times the product of current cluster variables to the b-column."""
        num = self.y[k - 1].as_laurent(self.ctx)
        den = LaurentPoly.const(self.ctx, 1)
        for j in range(1, self.n + 1):
            power = self.b[j - 1][k - 1]
            if power > 0:
                num = num * self.x[j - 1] ** power
            elif power < 0:
                den = den * self.x[j - 1] ** (-power)
        return RationalPair(num, den)

    def key(self) -> Tuple:
        return (
            tuple(p.canonical() for p in self.x),
            tuple(t.exponents for t in self.y),
            self.b,
        )

    def unlabeled_key(self) -> Tuple:
        n = self.n
        best = None
        for perm in itertools.permutations(range(n)):
            d_p = tuple(self.datum.d[perm[i]] for i in range(n))
            z_p = tuple(self.datum.z[perm[i]] for i in range(n))
            x_p = tuple(self.x[perm[i]].canonical() for i in range(n))
            y_p = tuple(self.y[perm[i]].exponents for i in range(n))
            b_p = tuple(
                tuple(self.b[perm[i]][perm[j]] for j in range(n)) for i in range(n)
            )
            cand = (d_p, tuple(map(str, z_p)), x_p, y_p, b_p)
            if best is None or cand < best:
                best = cand
        return best


def exchange_laurent(seed: Seed, k: int) -> LaurentPoly:
    """Exchange numerator in the seed's own cluster coordinates; x_k-free."""
    dk = seed.datum.d[k - 1]
    total = LaurentPoly.zero(seed.ctx)
    yk_mono = seed.y[k - 1].as_laurent(seed.ctx)
    for s in range(dk + 1):
        term = seed.z_laurent(k, s) * yk_mono ** s
        for j in range(1, seed.n + 1):
            power = dk * POS(-seed.b[j - 1][k - 1]) + s * seed.b[j - 1][k - 1]
            if power:
                term = term * LaurentPoly.var(seed.ctx, f"x{j}", power)
        total = total + term
    return total


def mutate_seed(seed: Seed, k: int) -> Seed:
    """(d, z)-mutation at k; exact, raises when a division is not exact."""
    if not 1 <= k <= seed.n:
        raise SeedError(f"vertex {k} out of range")
    dk = seed.datum.d[k - 1]
    # The exchange numerator (prod_j x_j^[-b_jk]+)^dk * sum_s z_ks yhat_k^s
    # expands with nonnegative combined exponents of the current cluster
    # variables, so it is an honest Laurent polynomial in the initial data.
    yk_mono = seed.y[k - 1].as_laurent(seed.ctx)
    numerator = LaurentPoly.zero(seed.ctx)
    for s in range(dk + 1):
        term = seed.z_laurent(k, s) * yk_mono ** s
        for j in range(1, seed.n + 1):
            power = dk * POS(-seed.b[j - 1][k - 1]) + s * seed.b[j - 1][k - 1]
            if power:
                term = term * seed.x[j - 1] ** power
        numerator = numerator + term
    trop_den = None
    for s in range(dk + 1):
        term = seed.z_trop(k, s) * seed.y[k - 1] ** s
        trop_den = term if trop_den is None else trop_den + term
    denominator = seed.x[k - 1] * trop_den.as_laurent(seed.ctx)
    try:
        new_xk = laurent_divexact(numerator, denominator)
    except InexactDivision as exc:
        raise SeedError(f"exchange at {k} is not Laurent: remainder {exc.remainder}")

    new_y = []
    for i in range(1, seed.n + 1):
        if i == k:
            new_y.append(seed.y[k - 1] ** (-1))
            continue
        bki = seed.b[k - 1][i - 1]
        value = seed.y[i - 1] * (seed.y[k - 1] ** POS(bki)) ** dk
        value = value * trop_den ** (-bki)
        new_y.append(value)

    n = seed.n
    new_b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k - 1 or j == k - 1:
                new_b[i][j] = -seed.b[i][j]
            else:
                new_b[i][j] = seed.b[i][j] + dk * (
                    POS(-seed.b[i][k - 1]) * seed.b[k - 1][j]
                    + seed.b[i][k - 1] * POS(seed.b[k - 1][j])
                )
    new_x = list(seed.x)
    new_x[k - 1] = new_xk
    return Seed(
        seed.ctx,
        seed.trop_ctx,
        seed.datum,
        tuple(tuple(r) for r in new_b),
        tuple(new_x),
        tuple(new_y),
        seed.history + (k,),
    )


@dataclass
class RationalPair:
    """num/den of Laurent polynomials, compared by cross multiplication."""

    num: LaurentPoly
    den: LaurentPoly

    def __mul__(self, other: "RationalPair") -> "RationalPair":
        return RationalPair(self.num * other.num, self.den * other.den)

    def __pow__(self, p: int) -> "RationalPair":
        if p < 0:
            return RationalPair(self.den, self.num) ** (-p)
        return RationalPair(self.num ** p, self.den ** p)

    def __add__(self, other: "RationalPair") -> "RationalPair":
        return RationalPair(self.num * other.den + other.num * self.den, self.den * other.den)

    def __eq__(self, other) -> bool:
        return self.num * other.den == other.num * self.den


def _pair(poly: LaurentPoly) -> RationalPair:
    return RationalPair(poly, LaurentPoly.const(poly.ctx, 1))


def yhat_mutation_check(seed: Seed, k: int) -> bool:
    """The y-hat functions of the mutated seed satisfy the published rule."""
    mutated = mutate_seed(seed, k)
    dk = seed.datum.d[k - 1]
    yk_hat = seed.y_hat_pair(k)
    poly_sum = _pair(LaurentPoly.zero(seed.ctx))
    for s in range(dk + 1):
        poly_sum = poly_sum + _pair(seed.z_laurent(k, s)) * (yk_hat ** s)
    for i in range(1, seed.n + 1):
        actual = mutated.y_hat_pair(i)
        if i == k:
            expected = yk_hat ** (-1)
        else:
            bki = seed.b[k - 1][i - 1]
            expected = seed.y_hat_pair(i) * (yk_hat ** POS(bki)) ** dk
            expected = expected * (poly_sum ** (-bki))
        if not actual == expected:
            return False
    return True


# -- g-vectors, F-polynomials, c-vectors, h-vectors -------------------------

@dataclass
class GFRecord:
    """Per-step data along a mutation path in principal coefficients."""

    b: Tuple[Tuple[int, ...], ...]
    c: Tuple[Tuple[int, ...], ...]           # columns are c-vectors
    g: Tuple[Tuple[int, ...], ...]           # columns are g-vectors
    f: Tuple[LaurentPoly, ...]
    y: Tuple[TropicalValue, ...]             # tropical Y-functions over (y, z)


def gf_initial(seed: Seed) -> GFRecord:
    n = seed.n
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    ones = tuple(LaurentPoly.const(seed.ctx, 1) for _ in range(n))
    trop_ctx = PolyContext(tuple([f"y{i}" for i in range(1, n + 1)] + list(
        seed.datum.symbolic_names())))
    y = tuple(TropicalValue.generator(trop_ctx, f"y{i}") for i in range(1, n + 1))
    return GFRecord(seed.b, ident, ident, ones, y)


def gf_step(seed: Seed, record: GFRecord, k: int,
            printed_convention: bool = False) -> GFRecord:
    """One mutation step of the c/g/F data at vertex k.

    The default sign convention inside the exchange-sum reproduces the
    degree-one classical recursion; ``printed_convention`` flips the exponent
    signs for cross-checking.
    """
    n = seed.n
    dk = seed.datum.d[k - 1]
    ctx = seed.ctx
    b = record.b

    # tropical Y mutation gives the next C-matrix
    trop_den = None
    for s in range(dk + 1):
        v = seed.datum.z_value(k, s)
        term = (
            TropicalValue.generator(record.y[0].ctx, v)
            if isinstance(v, str)
            else TropicalValue.one(record.y[0].ctx)
        )
        term = term * record.y[k - 1] ** s
        trop_den = term if trop_den is None else trop_den + term
    new_y = []
    for i in range(1, n + 1):
        if i == k:
            new_y.append(record.y[k - 1] ** (-1))
        else:
            bki = b[k - 1][i - 1]
            value = record.y[i - 1] * (record.y[k - 1] ** POS(bki)) ** dk
            value = value * trop_den ** (-bki)
            new_y.append(value)
    new_c_cols = []
    for j in range(n):
        col = tuple(new_y[j].exponent_of(f"y{i}") for i in range(1, n + 1))
        new_c_cols.append(col)
    new_c = tuple(tuple(new_c_cols[j][i] for j in range(n)) for i in range(n))

    # g-vector recurrence
    c = record.c
    g_cols = [tuple(record.g[i][l] for i in range(n)) for l in range(n)]
    b0_cols = [tuple(seed.b[i][j] for i in range(n)) for j in range(n)]
    new_gk = [-g_cols[k - 1][i] for i in range(n)]
    for i in range(1, n + 1):
        coeff = dk * POS(-b[i - 1][k - 1])
        if coeff:
            new_gk = [a + coeff * gi for a, gi in zip(new_gk, g_cols[i - 1])]
        coeff2 = dk * POS(-c[i - 1][k - 1])
        if coeff2:
            new_gk = [a - coeff2 * bi for a, bi in zip(new_gk, b0_cols[i - 1])]
    new_g_cols = list(g_cols)
    new_g_cols[k - 1] = tuple(new_gk)
    new_g = tuple(tuple(new_g_cols[j][i] for j in range(n)) for i in range(n))

    # F-polynomial recurrence
    sign = -1 if printed_convention else 1
    total = LaurentPoly.zero(ctx)
    for s in range(dk + 1):
        v = seed.datum.z_value(k, s)
        term = LaurentPoly.var(ctx, v) if isinstance(v, str) else LaurentPoly.const(ctx, v)
        for i in range(1, n + 1):
            y_power = dk * POS(-c[i - 1][k - 1]) + sign * s * c[i - 1][k - 1]
            if y_power:
                term = term * LaurentPoly.var(ctx, f"y{i}", y_power)
            f_power = dk * POS(-b[i - 1][k - 1]) + sign * s * b[i - 1][k - 1]
            if f_power:
                term = term * record.f[i - 1] ** f_power
        total = total + term
    try:
        new_fk = laurent_divexact(total, record.f[k - 1])
    except InexactDivision as exc:
        raise SeedError(f"F-recursion at {k} is not exact: {exc.remainder}")
    new_f = list(record.f)
    new_f[k - 1] = new_fk

    # B-matrix step
    new_b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k - 1 or j == k - 1:
                new_b[i][j] = -b[i][j]
            else:
                new_b[i][j] = b[i][j] + dk * (
                    POS(-b[i][k - 1]) * b[k - 1][j] + b[i][k - 1] * POS(b[k - 1][j])
                )
    return GFRecord(
        tuple(tuple(r) for r in new_b), new_c, new_g, tuple(new_f), tuple(new_y)
    )


def gf_recursion(seed: Seed, path: Sequence[int],
                 printed_convention: bool = False) -> List[GFRecord]:
    """Records along the path, starting with the initial one."""
    records = [gf_initial(seed)]
    for k in path:
        records.append(gf_step(seed, records[-1], k, printed_convention))
    return records


def h_vector(seed: Seed, f_poly: LaurentPoly) -> Tuple[int, ...]:
    """Tropical specialization of F under y_i -> y_i^-1 prod y_j^(d_j [-b_ji]+)."""
    n = seed.n
    if any(c < 0 for c in f_poly.terms.values()):
        raise SeedError("F-polynomial has negative coefficients; h-vector undefined")
    trop_ctx = PolyContext(tuple([f"y{i}" for i in range(1, n + 1)] + list(
        seed.datum.symbolic_names())))
    images: Dict[str, TropicalValue] = {}
    for i in range(1, n + 1):
        exps = [0] * len(trop_ctx)
        exps[trop_ctx.index[f"y{i}"]] = -1
        for j in range(1, n + 1):
            if j != i:
                exps[trop_ctx.index[f"y{j}"]] += seed.datum.d[j - 1] * POS(
                    -seed.b[j - 1][i - 1]
                )
        images[f"y{i}"] = TropicalValue(trop_ctx, exps)
    for name in seed.datum.symbolic_names():
        images[name] = TropicalValue.generator(trop_ctx, name)
    best: Optional[List[int]] = None
    for exp in f_poly.terms:
        total = [0] * len(trop_ctx)
        for idx, power in enumerate(exp):
            if power == 0:
                continue
            name = f_poly.ctx.names[idx]
            if name.startswith("x"):
                raise SeedError("F-polynomial unexpectedly contains x-variables")
            if name in images:
                for t, e in enumerate(images[name].exponents):
                    total[t] += power * e
            else:
                total[trop_ctx.index[name]] += power
        if best is None:
            best = total
        else:
            best = [min(a, bb) for a, bb in zip(best, total)]
    if best is None:
        best = [0] * len(trop_ctx)
    return tuple(best[trop_ctx.index[f"y{i}"]] for i in range(1, n + 1))


def h_relation_check(seed: Seed, path: Sequence[int], l: int) -> bool:
    """d_k g(k) = h(k) - h'(k) plus the two-sided F identity at the first edge.

    ``path`` runs from the initial seed; the relation compares the record of
    x_{l;t} computed from t0 with the record computed from t1 = mu_k(t0),
    where k is the first step of the path.
    """
    if not path:
        return True
    k = path[0]
    records = gf_recursion(seed, path)
    rec_t = records[-1]
    seed1 = mutate_seed(seed, k)
    seed1_initial = Seed(
        seed1.ctx, seed1.trop_ctx, seed1.datum, seed1.b,
        tuple(LaurentPoly.var(seed1.ctx, f"x{i}") for i in range(1, seed.n + 1)),
        seed1.y, (),
    )
    records1 = gf_recursion(seed1_initial, path[1:])
    rec_t1 = records1[-1]

    g_k = rec_t.g[k - 1][l - 1]
    h_t = h_vector(seed, rec_t.f[l - 1])
    h_t1 = h_vector(seed1_initial, rec_t1.f[l - 1])
    dk = seed.datum.d[k - 1]
    if dk * g_k != h_t[k - 1] - h_t1[k - 1]:
        return False
    if h_t[k - 1] % dk or h_t1[k - 1] % dk:
        return False

    # two-sided identity: (sum_s z y_k^s)^(h/dk) F = (sum_s z y'_k^s)^(h'/dk) F'(y')
    ctx = seed.ctx
    y_k = _pair(LaurentPoly.var(ctx, f"y{k}"))
    z_sum = _pair(LaurentPoly.zero(ctx))
    for s in range(dk + 1):
        z_sum = z_sum + _pair(seed.z_laurent(k, s)) * (y_k ** s)
    y_images: List[RationalPair] = []
    for i in range(1, seed.n + 1):
        if i == k:
            y_images.append(y_k ** (-1))
        else:
            bki = seed.b[k - 1][i - 1]
            value = _pair(LaurentPoly.var(ctx, f"y{i}")) * (y_k ** POS(bki)) ** dk
            value = value * (z_sum ** (-bki))
            y_images.append(value)
    z_sum_prime = _pair(LaurentPoly.zero(ctx))
    for s in range(dk + 1):
        z_sum_prime = z_sum_prime + _pair(seed.z_laurent(k, s)) * (y_images[k - 1] ** s)
    lhs = (z_sum ** (h_t[k - 1] // dk)) * _pair(rec_t.f[l - 1])
    rhs = (z_sum_prime ** (h_t1[k - 1] // dk)) * _eval_pair(rec_t1.f[l - 1], y_images, ctx)
    return lhs == rhs


def _eval_pair(poly: LaurentPoly, y_images: List[RationalPair], ctx: PolyContext) -> RationalPair:
    """Evaluate a polynomial in y at rational-function images (z fixed)."""
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


def separation(seed: Seed, g: Sequence[int], f_poly: LaurentPoly) -> LaurentPoly:
    """Cluster variable from its g-vector and F-polynomial, over Trop(z), y = 1."""
    if f_poly.constant_term() != 1:
        raise SeedError("F-polynomial must have constant term 1")
    ctx = seed.ctx
    images = {}
    for i in range(1, seed.n + 1):
        mono = LaurentPoly.const(ctx, 1)
        for j in range(1, seed.n + 1):
            power = seed.b[j - 1][i - 1]
            if power:
                mono = mono * LaurentPoly.var(ctx, f"x{j}", power)
        images[f"y{i}"] = mono
    numer = f_poly.substitute_monomials(images)
    # tropical denominator: evaluate F in Trop(z) with every y set to 1
    z_names = seed.datum.symbolic_names()
    if any(c < 0 for c in f_poly.terms.values()):
        raise SeedError("F-polynomial has negative coefficients")
    best = None
    for exp in f_poly.terms:
        total = {name: 0 for name in z_names}
        for idx, power in enumerate(exp):
            name = f_poly.ctx.names[idx]
            if power and name in total:
                total[name] += power
        vec = tuple(total[name] for name in z_names)
        best = vec if best is None else tuple(min(a, b) for a, b in zip(best, vec))
    denom = LaurentPoly.const(ctx, 1)
    if best:
        for name, power in zip(z_names, best):
            if power:
                denom = denom * LaurentPoly.var(ctx, name, power)
    out = numer
    for i in range(1, seed.n + 1):
        if g[i - 1]:
            out = out * LaurentPoly.var(ctx, f"x{i}", g[i - 1])
    return laurent_divexact(out, denom)


@dataclass
class LaurentReport:
    checked: int
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def laurent_check(seed: Seed, path: Sequence[int]) -> LaurentReport:
    """Mutate along the path; confirm Laurentness with integer z-coefficients."""
    current = seed
    checked = 0
    violations: List[str] = []
    for step, k in enumerate(path):
        try:
            current = mutate_seed(current, k)
        except SeedError as exc:
            violations.append(f"step {step} at {k}: {exc}")
            return LaurentReport(checked, violations)
        poly = current.x[k - 1]
        checked += 1
        for exp, coeff in poly.terms.items():
            if coeff.denominator != 1:
                violations.append(
                    f"step {step} at {k}: non-integer coefficient {coeff}"
                )
                break
            for idx, power in enumerate(exp):
                name = poly.ctx.names[idx]
                if name.startswith("y") and power:
                    violations.append(f"step {step} at {k}: stray y-variable")
                    break
    return LaurentReport(checked, violations)


def upper_membership(seed: Seed, element: LaurentPoly) -> Tuple[bool, Optional[int]]:
    """Laurent in the initial cluster and in all adjacent clusters.

    Requires the exchange matrix to have full rank.  Returns (True, None) or
    (False, failing vertex).
    """
    b_rat = [[Fraction(v) for v in row] for row in seed.b]
    if linalg.rank(b_rat) != seed.n:
        raise SeedError("upper-bound test requires a full-rank exchange matrix")
    ctx = seed.ctx
    for k in range(1, seed.n + 1):
        exchange = exchange_laurent(seed, k)
        idx = ctx.index[f"x{k}"]
        by_power: Dict[int, LaurentPoly] = {}
        for exp, coeff in element.terms.items():
            power = exp[idx]
            reduced = list(exp)
            reduced[idx] = 0
            mono = LaurentPoly.monomial(ctx, tuple(reduced), coeff)
            by_power[power] = by_power.get(power, LaurentPoly.zero(ctx)) + mono
        ok = True
        for power, coeff_poly in by_power.items():
            if power >= 0:
                continue
            try:
                laurent_divexact(coeff_poly, exchange ** (-power))
            except InexactDivision:
                ok = False
                break
        if not ok:
            return False, k
    return True, None


def cluster_character(seed: Seed, g_check: Sequence[int], f_poly: LaurentPoly) -> LaurentPoly:
    """x^g-check times F evaluated at the y-hat monomials (Trop(z), y = 1)."""
    ctx = seed.ctx
    images = {}
    for i in range(1, seed.n + 1):
        mono = LaurentPoly.const(ctx, 1)
        for j in range(1, seed.n + 1):
            power = seed.b[j - 1][i - 1]
            if power:
                mono = mono * LaurentPoly.var(ctx, f"x{j}", power)
        images[f"y{i}"] = mono
    out = f_poly.substitute_monomials(images)
    for i in range(1, seed.n + 1):
        if g_check[i - 1]:
            out = out * LaurentPoly.var(ctx, f"x{i}", g_check[i - 1])
    return out


# -- exchange graph exploration ---------------------------------------------

@dataclass
class ExchangeGraph:
    nodes: List[Seed]
    edges: List[Tuple[int, int, int]]  # (from, to, vertex)
    complete: bool

    def node_count(self) -> int:
        return len(self.nodes)


def explore(seed: Seed, max_depth: int, mode: str = "labeled",
            node_budget: int = 10000) -> ExchangeGraph:
    """Breadth-first exploration of the mutation graph with deduplication."""
    if mode not in ("labeled", "unlabeled"):
        raise SeedError(f"unknown exploration mode {mode}")
    keyer = (lambda s: s.key()) if mode == "labeled" else (lambda s: s.unlabeled_key())
    nodes = [seed]
    index = {keyer(seed): 0}
    edges: List[Tuple[int, int, int]] = []
    frontier = [(0, 0)]  # (node index, depth)
    complete = True
    while frontier:
        next_frontier = []
        for node_idx, depth in frontier:
            if depth >= max_depth:
                continue
            current = nodes[node_idx]
            for k in range(1, seed.n + 1):
                nxt = mutate_seed(current, k)
                key = keyer(nxt)
                if key in index:
                    target = index[key]
                else:
                    if len(nodes) >= node_budget:
                        complete = False
                        continue
                    nodes.append(nxt)
                    target = len(nodes) - 1
                    index[key] = target
                    next_frontier.append((target, depth + 1))
                if (target, node_idx, k) not in edges and (node_idx, target, k) not in edges:
                    edges.append((node_idx, target, k))
        frontier = next_frontier
    return ExchangeGraph(nodes, edges, complete)
