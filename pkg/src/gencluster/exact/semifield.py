"""Semifield values: tropical (min-plus) and subtraction-free rational.

Both kinds support *, /, integer powers and a semifield addition spelled
``+``; subtraction is deliberately unsupported so tropical specialization
stays valid for anything built from these values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Tuple, Union

from .rings import ContextMismatch, LaurentPoly, PolyContext


class TropicalValue:
    """Laurent monomial in the tropical semifield: + is componentwise min."""

    __slots__ = ("ctx", "exponents")

    def __init__(self, ctx: PolyContext, exponents):
        exps = tuple(int(e) for e in exponents)
        if len(exps) != len(ctx):
            raise ContextMismatch(f"exponent length {len(exps)} vs {ctx}")
        self.ctx = ctx
        self.exponents = exps

    @staticmethod
    def one(ctx: PolyContext) -> "TropicalValue":
        return TropicalValue(ctx, ctx.zero_exp())

    @staticmethod
    def generator(ctx: PolyContext, name: str, power: int = 1) -> "TropicalValue":
        return TropicalValue(ctx, ctx.unit_exp(name, power))

    def _check(self, other: "TropicalValue") -> None:
        if not isinstance(other, TropicalValue) or self.ctx is not other.ctx:
            raise ContextMismatch("tropical values over different generator lists")

    def __add__(self, other: "TropicalValue") -> "TropicalValue":
        self._check(other)
        return TropicalValue(
            self.ctx, tuple(min(a, b) for a, b in zip(self.exponents, other.exponents))
        )

    def __mul__(self, other: "TropicalValue") -> "TropicalValue":
        self._check(other)
        return TropicalValue(
            self.ctx, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __truediv__(self, other: "TropicalValue") -> "TropicalValue":
        self._check(other)
        return TropicalValue(
            self.ctx, tuple(a - b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, n: int) -> "TropicalValue":
        return TropicalValue(self.ctx, tuple(a * n for a in self.exponents))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalValue):
            return NotImplemented
        return self.ctx is other.ctx and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.ctx.names, self.exponents))

    def exponent_of(self, name: str) -> int:
        return self.exponents[self.ctx.index[name]]

    def as_laurent(self, ctx: PolyContext) -> LaurentPoly:
        """The underlying monomial as a Laurent polynomial over ``ctx``."""
        exp = [0] * len(ctx)
        for name, e in zip(self.ctx.names, self.exponents):
            exp[ctx.index[name]] += e
        return LaurentPoly.monomial(ctx, tuple(exp))

    def __repr__(self) -> str:
        return f"TropicalValue({self.as_laurent(self.ctx).canonical()})"


def trop_add(a: TropicalValue, b: TropicalValue) -> TropicalValue:
    return a + b


def _content(poly: LaurentPoly) -> Fraction:
    """Positive rational content gcd of all coefficients (0 for zero poly)."""
    num_gcd = 0
    den_lcm = 1
    for c in poly.terms.values():
        num_gcd = _int_gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        return Fraction(0)
    return Fraction(num_gcd, den_lcm)


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class SubtractionFreeValue:
    """Element of the universal semifield: ratio of nonnegative polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if num.ctx is not den.ctx:
            raise ContextMismatch("numerator/denominator contexts differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in subtraction-free value")
        if any(c < 0 for c in num.terms.values()) or any(
            c < 0 for c in den.terms.values()
        ):
            raise ValueError("subtraction-free values need nonnegative coefficients")
        # canonical form: clear common monomial and content gcd
        shift = tuple(
            -min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
        )
        num = num.shift(shift)
        den = den.shift(shift)
        content = _content(num) if not num.is_zero() else Fraction(1)
        den_content = _content(den)
        scale = den_content if num.is_zero() else _frac_gcd(content, den_content)
        if scale not in (0, 1):
            num = num * (1 / scale)
            den = den * (1 / scale)
        self.num = num
        self.den = den

    @staticmethod
    def const(ctx: PolyContext, value) -> "SubtractionFreeValue":
        v = Fraction(value)
        if v < 0:
            raise ValueError("subtraction-free constants must be nonnegative")
        return SubtractionFreeValue(LaurentPoly.const(ctx, v), LaurentPoly.const(ctx, 1))

    @staticmethod
    def generator(ctx: PolyContext, name: str) -> "SubtractionFreeValue":
        return SubtractionFreeValue(LaurentPoly.var(ctx, name), LaurentPoly.const(ctx, 1))

    def _coerce(self, other) -> "SubtractionFreeValue":
        if isinstance(other, SubtractionFreeValue):
            if other.num.ctx is not self.num.ctx:
                raise ContextMismatch("subtraction-free values over different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return SubtractionFreeValue.const(self.num.ctx, other)
        raise TypeError(f"cannot combine SubtractionFreeValue with {type(other)}")

    def __add__(self, other) -> "SubtractionFreeValue":
        o = self._coerce(other)
        return SubtractionFreeValue(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __mul__(self, other) -> "SubtractionFreeValue":
        o = self._coerce(other)
        return SubtractionFreeValue(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SubtractionFreeValue":
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by semifield zero")
        return SubtractionFreeValue(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int) -> "SubtractionFreeValue":
        if n < 0:
            return SubtractionFreeValue(self.den, self.num) ** (-n)
        one = LaurentPoly.const(self.num.ctx, 1)
        result = SubtractionFreeValue(one, one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SubtractionFreeValue.const(self.num.ctx, other)
        if not isinstance(other, SubtractionFreeValue):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        raise TypeError("SubtractionFreeValue is unhashable (equality is cross-multiplied)")

    def is_one(self) -> bool:
        return self.num == self.den

    def __repr__(self) -> str:
        return f"SF(({self.num.canonical()}) / ({self.den.canonical()}))"


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        _int_gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


# -- subtraction-free expression trees ---------------------------------

@dataclass(frozen=True)
class SFExpr:
    """Expression tree node: op in {'const','var','add','mul','div','pow'}."""

    op: str
    args: Tuple = ()

    @staticmethod
    def const(value) -> "SFExpr":
        v = Fraction(value)
        if v <= 0:
            raise ValueError("only positive rational constants are subtraction-free")
        return SFExpr("const", (v,))

    @staticmethod
    def var(name: str) -> "SFExpr":
        return SFExpr("var", (name,))

    def __add__(self, other: "SFExpr") -> "SFExpr":
        return SFExpr("add", (self, _as_expr(other)))

    __radd__ = __add__

    def __mul__(self, other: "SFExpr") -> "SFExpr":
        return SFExpr("mul", (self, _as_expr(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: "SFExpr") -> "SFExpr":
        return SFExpr("div", (self, _as_expr(other)))

    def __pow__(self, n: int) -> "SFExpr":
        return SFExpr("pow", (self, int(n)))

    def __sub__(self, other):
        raise TypeError("subtraction is not a semifield operation")

    __rsub__ = __sub__


def _as_expr(value) -> SFExpr:
    if isinstance(value, SFExpr):
        return value
    return SFExpr.const(value)


def sf_eval(expr: SFExpr, env: Mapping[str, object]):
    """Homomorphic evaluation of a subtraction-free expression.

    ``env`` assigns every variable a semifield value (Fraction, TropicalValue
    or SubtractionFreeValue); constants are coerced through multiplication by
    the semifield unit where necessary.
    """
    if expr.op == "var":
        return env[expr.args[0]]
    if expr.op == "const":
        sample = next(iter(env.values()), Fraction(1))
        return _const_in(expr.args[0], sample)
    if expr.op == "add":
        return sf_eval(expr.args[0], env) + sf_eval(expr.args[1], env)
    if expr.op == "mul":
        return sf_eval(expr.args[0], env) * sf_eval(expr.args[1], env)
    if expr.op == "div":
        return sf_eval(expr.args[0], env) / sf_eval(expr.args[1], env)
    if expr.op == "pow":
        return sf_eval(expr.args[0], env) ** expr.args[1]
    raise ValueError(f"unknown op {expr.op}")


def _const_in(value: Fraction, sample):
    """Embed a positive rational constant into the semifield of ``sample``."""
    if isinstance(sample, TropicalValue):
        # every positive constant is the tropical unit
        return TropicalValue.one(sample.ctx)
    if isinstance(sample, SubtractionFreeValue):
        return SubtractionFreeValue.const(sample.num.ctx, value)
    return value
