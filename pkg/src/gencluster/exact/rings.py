"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A polynomial is a map from integer exponent vectors to nonzero Fractions.
Exponent vectors are dense tuples indexed by a shared, immutable variable
context.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

Exponent = Tuple[int, ...]


class ContextMismatch(ValueError):
    """Raised when two values over different variable contexts are combined."""


class InexactDivision(ArithmeticError):
    """Raised by divexact when the divisor does not divide the dividend.

    The offending remainder is kept as a witness.
    """

    def __init__(self, remainder: "LaurentPoly"):
        super().__init__(f"division is not exact; remainder {remainder}")
        self.remainder = remainder


_CONTEXT_CACHE: Dict[Tuple[str, ...], "PolyContext"] = {}


class PolyContext:
    """Immutable, interned list of variable names shared by polynomials."""

    __slots__ = ("names", "index")

    def __new__(cls, names: Iterable[str]):
        key = tuple(names)
        cached = _CONTEXT_CACHE.get(key)
        if cached is not None:
            return cached
        if len(set(key)) != len(key):
            raise ValueError(f"duplicate variable names in {key}")
        self = object.__new__(cls)
        self.names = key
        self.index = {name: i for i, name in enumerate(key)}
        _CONTEXT_CACHE[key] = self
        return self

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"PolyContext{self.names}"

    def zero_exp(self) -> Exponent:
        return (0,) * len(self.names)

    def unit_exp(self, name: str, power: int = 1) -> Exponent:
        exp = [0] * len(self.names)
        exp[self.index[name]] = power
        return tuple(exp)


def _norm_coeff(value):
    """Exact coefficient, stored as int when integral (much faster arithmetic)."""
    if isinstance(value, int):
        return value
    c = Fraction(value)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    """Immutable sparse Laurent polynomial over a fixed PolyContext.

    Coefficients are exact: Python ints where possible, Fractions otherwise.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: PolyContext, terms: Mapping[Exponent, Fraction]):
        clean: Dict[Exponent, Fraction] = {}
        nvars = len(ctx)
        for exp, coeff in terms.items():
            c = _norm_coeff(coeff)
            if c == 0:
                continue
            if len(exp) != nvars:
                raise ContextMismatch(f"exponent {exp} has wrong length for {ctx}")
            clean[tuple(exp)] = c
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ctx: PolyContext) -> "LaurentPoly":
        return LaurentPoly(ctx, {})

    @staticmethod
    def const(ctx: PolyContext, value) -> "LaurentPoly":
        return LaurentPoly(ctx, {ctx.zero_exp(): Fraction(value)})

    @staticmethod
    def var(ctx: PolyContext, name: str, power: int = 1) -> "LaurentPoly":
        return LaurentPoly(ctx, {ctx.unit_exp(name, power): Fraction(1)})

    @staticmethod
    def monomial(ctx: PolyContext, exp: Exponent, coeff=1) -> "LaurentPoly":
        return LaurentPoly(ctx, {tuple(exp): Fraction(coeff)})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.ctx.zero_exp(): Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ctx.zero_exp(), Fraction(0))

    def coeff(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self.terms.items())))
        return self._hash

    # -- ring operations ----------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return LaurentPoly(self.ctx, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.ctx, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, 0) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    terms.pop(exp, None)
        return LaurentPoly(self.ctx, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (exp, coeff), = self.terms.items()
            inv = LaurentPoly(self.ctx, {tuple(-e for e in exp): Fraction(1) / coeff})
            return inv ** (-n)
        result = LaurentPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exp: Exponent) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPoly(
            self.ctx, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def min_exponents(self) -> Exponent:
        """Componentwise minimum exponent over all terms (zero poly -> zeros)."""
        if not self.terms:
            return self.ctx.zero_exp()
        mins = [min(e[i] for e in self.terms) for i in range(len(self.ctx))]
        return tuple(mins)

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return self.ctx.zero_exp()
        return tuple(max(e[i] for e in self.terms) for i in range(len(self.ctx)))

    def substitute_monomials(self, images: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Substitute each named variable by a monomial (exactness preserved).

        Variables not named in ``images`` are kept.  Every image must be a
        monomial so that negative exponents stay meaningful.
        """
        ctx = self.ctx
        out = LaurentPoly.zero(ctx)
        mono_data = {}
        for name, img in images.items():
            if not img.is_monomial():
                raise ValueError(f"image of {name} is not a monomial")
            (exp, coeff), = img.terms.items()
            mono_data[ctx.index[name]] = (exp, coeff)
        for exp, c in self.terms.items():
            new_exp = list(exp)
            coeff = c
            for idx, (m_exp, m_coeff) in mono_data.items():
                power = exp[idx]
                if power == 0:
                    continue
                new_exp[idx] = 0
                coeff = coeff * m_coeff ** power
                new_exp = [a + power * b for a, b in zip(new_exp, m_exp)]
            out = out + LaurentPoly.monomial(ctx, tuple(new_exp), coeff)
        return out

    def eval_values(self, env: Mapping[str, object]):
        """Evaluate in any commutative ring given values for every variable.

        Intended for exact evaluations (Fractions, other polynomials).
        """
        total = None
        for exp, c in self.terms.items():
            term = c
            for idx, power in enumerate(exp):
                if power == 0:
                    continue
                val = env[self.ctx.names[idx]]
                term = term * val ** power
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    # -- canonical text form --------------------------------------------

    def canonical(self) -> str:
        """Canonical text form: terms sorted lexicographically by exponent."""
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms):
            coeff = self.terms[exp]
            factors = [str(coeff)]
            for idx, power in enumerate(exp):
                if power == 0:
                    continue
                name = self.ctx.names[idx]
                factors.append(name if power == 1 else f"{name}^{power}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.canonical()})"


def _lex_leading(poly: LaurentPoly) -> Exponent:
    return max(poly.terms)


def laurent_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring; raises InexactDivision otherwise."""
    if a.ctx is not b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    # Shift both operands into the polynomial subring so lex order is a
    # well-order, then do single-divisor division tracking the remainder.
    shift_a = tuple(-m for m in a.min_exponents())
    shift_b = tuple(-m for m in b.min_exponents())
    pa = a.shift(shift_a)
    pb = b.shift(shift_b)
    lead_b = _lex_leading(pb)
    coeff_b = pb.terms[lead_b]
    quotient: Dict[Exponent, Fraction] = {}
    rem = pa
    remainder_terms: Dict[Exponent, Fraction] = {}
    while rem.terms:
        lead_r = _lex_leading(rem)
        diff = tuple(r - s for r, s in zip(lead_r, lead_b))
        if any(d < 0 for d in diff):
            remainder_terms[lead_r] = rem.terms[lead_r]
            rem = rem - LaurentPoly.monomial(rem.ctx, lead_r, rem.terms[lead_r])
            continue
        factor = Fraction(rem.terms[lead_r]) / coeff_b
        quotient[diff] = factor
        rem = rem - LaurentPoly.monomial(rem.ctx, diff, factor) * pb
    if remainder_terms:
        witness = LaurentPoly(a.ctx, remainder_terms).shift(
            tuple(-s for s in shift_a)
        )
        raise InexactDivision(witness)
    total_shift = tuple(sb - sa for sa, sb in zip(shift_a, shift_b))
    return LaurentPoly(a.ctx, quotient).shift(total_shift)
