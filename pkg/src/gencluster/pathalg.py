"""Degree-truncated path algebra over vertices carrying nilpotent loops.

Words interleave loop powers with non-loop arrows.  An open path with arrows
a_1 .. a_m (composition order, t(a_i) = h(a_{i+1})) is stored together with
m+1 loop powers; a cyclic word stores m slots (loop power, arrow), the loop
sitting at the head of its arrow, and is kept in the lexicographically
minimal rotation so cyclic equivalence becomes equality.

Everything is exact; products that would exceed the truncation degree are
dropped and counted on the algebra context.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import QQ, rref
from .quiver import Arrow, LoopedQuiver, TwoCycleError, is_two_acyclic

DEFAULT_TRUNCATION = 12


class DegeneratePotential(ValueError):
    """Raised when no 2-cycle pairing with nonzero determinant exists."""


class AlgebraContext:
    """Loop degrees plus truncation; counts products lost to truncation."""

    __slots__ = ("d", "trunc", "truncation_losses")

    def __init__(self, d: Sequence[int], trunc: int = DEFAULT_TRUNCATION):
        self.d = tuple(d)
        self.trunc = trunc
        self.truncation_losses = 0

    def degree(self, vertex: int) -> int:
        return self.d[vertex - 1]

    def note_loss(self) -> None:
        self.truncation_losses += 1


@dataclass(frozen=True)
class PathWord:
    """Open path: arrows in composition order with m+1 interleaved loop powers.

    ``vertex`` is the common head/tail for the arrow-free case (m = 0).
    """

    arrows: Tuple[Arrow, ...]
    loops: Tuple[int, ...]
    vertex: int = 0

    def __post_init__(self):
        if len(self.loops) != len(self.arrows) + 1:
            raise ValueError("need one loop power per junction")
        for a, b in zip(self.arrows, self.arrows[1:]):
            if a.tail != b.head:
                raise ValueError(f"arrows {a} and {b} do not compose")

    @property
    def head(self) -> int:
        return self.arrows[0].head if self.arrows else self.vertex

    @property
    def tail(self) -> int:
        return self.arrows[-1].tail if self.arrows else self.vertex

    @property
    def arrow_length(self) -> int:
        return len(self.arrows)

    def junction_vertex(self, idx: int) -> int:
        """Vertex at which ``loops[idx]`` lives."""
        if idx == 0:
            return self.head
        return self.arrows[idx - 1].tail

    def is_valid(self, ctx: AlgebraContext) -> bool:
        return all(
            0 <= power < ctx.degree(self.junction_vertex(i))
            for i, power in enumerate(self.loops)
        )

    def __repr__(self) -> str:
        if not self.arrows:
            return f"e{self.vertex}" + (f"*eps^{self.loops[0]}" if self.loops[0] else "")
        bits = []
        for i, a in enumerate(self.arrows):
            if self.loops[i]:
                bits.append(f"eps{self.junction_vertex(i)}^{self.loops[i]}")
            bits.append(f"{a.tail}->{a.head}#{a.ordinal}")
        if self.loops[-1]:
            bits.append(f"eps{self.tail}^{self.loops[-1]}")
        return "[" + " ".join(bits) + "]"


def idem(vertex: int, power: int = 0) -> PathWord:
    return PathWord((), (power,), vertex)


def arrow_word(a: Arrow, left: int = 0, right: int = 0) -> PathWord:
    return PathWord((a,), (left, right))


class AlgElement:
    """Finite rational combination of open path words."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Optional[Mapping[PathWord, Fraction]] = None):
        clean: Dict[PathWord, Fraction] = {}
        if terms:
            for word, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[word] = c
        self.ctx = ctx
        self.terms = clean

    @staticmethod
    def zero(ctx: AlgebraContext) -> "AlgElement":
        return AlgElement(ctx)

    @staticmethod
    def of_word(ctx: AlgebraContext, word: PathWord, coeff=1) -> "AlgElement":
        if not word.is_valid(ctx):
            return AlgElement(ctx)
        return AlgElement(ctx, {word: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgElement") -> "AlgElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return AlgElement(self.ctx, terms)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def scale(self, c) -> "AlgElement":
        c = Fraction(c)
        return AlgElement(self.ctx, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "AlgElement") -> "AlgElement":
        out: Dict[PathWord, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = concat_words(self.ctx, w1, w2)
                if w is None:
                    continue
                coeff = c1 * c2
                s = out.get(w, Fraction(0)) + coeff
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return AlgElement(self.ctx, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{w}" for w, c in sorted(self.terms.items(), key=lambda t: repr(t[0])))


def concat_words(ctx: AlgebraContext, w1: PathWord, w2: PathWord) -> Optional[PathWord]:
    """Product w1 * w2 (w2 acts first); None when it vanishes or truncates."""
    if w1.tail != w2.head:
        return None
    middle = w1.loops[-1] + w2.loops[0]
    if middle >= ctx.degree(w1.tail):
        return None
    if w1.arrow_length + w2.arrow_length > ctx.trunc:
        ctx.note_loss()
        return None
    arrows = w1.arrows + w2.arrows
    loops = w1.loops[:-1] + (middle,) + w2.loops[1:]
    word = PathWord(arrows, loops, w1.vertex if not arrows else 0)
    if not word.is_valid(ctx):
        return None
    return word


def _arrow_key(a: Arrow) -> Tuple[int, int, int]:
    return (a.tail, a.head, a.ordinal)


@dataclass(frozen=True)
class CyclicWord:
    """Cyclic path in canonical rotation: slots (loop power, arrow).

    Slot i's loop power sits at the head of its arrow; consecutive slots
    satisfy t(arrows[i]) = h(arrows[i+1]) cyclically.
    """

    arrows: Tuple[Arrow, ...]
    loops: Tuple[int, ...]

    @staticmethod
    def make(arrows: Sequence[Arrow], loops: Sequence[int]) -> "CyclicWord":
        arrows = tuple(arrows)
        loops = tuple(loops)
        if not arrows:
            raise ValueError("cyclic words need at least one arrow")
        if len(arrows) != len(loops):
            raise ValueError("one loop power per slot")
        m = len(arrows)
        for i in range(m):
            if arrows[i].tail != arrows[(i + 1) % m].head:
                raise ValueError("slots do not close up cyclically")
        best = None
        for r in range(m):
            rot = tuple(
                (loops[(r + i) % m], _arrow_key(arrows[(r + i) % m])) for i in range(m)
            )
            if best is None or rot < best[0]:
                best = (rot, r)
        r = best[1]
        return CyclicWord(
            tuple(arrows[(r + i) % m] for i in range(m)),
            tuple(loops[(r + i) % m] for i in range(m)),
        )

    @property
    def arrow_length(self) -> int:
        return len(self.arrows)

    def slot_vertex(self, i: int) -> int:
        return self.arrows[i].head

    def is_valid(self, ctx: AlgebraContext) -> bool:
        return all(
            0 <= self.loops[i] < ctx.degree(self.slot_vertex(i))
            for i in range(len(self.loops))
        )

    def uses_only(self, arrows: Iterable[Arrow]) -> bool:
        allowed = set(arrows)
        return all(a in allowed for a in self.arrows)

    def sort_key(self):
        return tuple((l, _arrow_key(a)) for l, a in zip(self.loops, self.arrows))

    def __repr__(self) -> str:
        bits = []
        for l, a in zip(self.loops, self.arrows):
            if l:
                bits.append(f"eps{a.head}^{l}")
            bits.append(f"{a.tail}->{a.head}#{a.ordinal}")
        return "cyc[" + " ".join(bits) + "]"


class Potential:
    """Rational combination of canonical cyclic words, truncated in degree."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Optional[Mapping[CyclicWord, Fraction]] = None):
        clean: Dict[CyclicWord, Fraction] = {}
        if terms:
            for word, coeff in terms.items():
                c = Fraction(coeff)
                if not c:
                    continue
                if word.arrow_length > ctx.trunc:
                    ctx.note_loss()
                    continue
                if not word.is_valid(ctx):
                    continue
                clean[word] = c
        self.ctx = ctx
        self.terms = clean

    @staticmethod
    def zero(ctx: AlgebraContext) -> "Potential":
        return Potential(ctx)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Potential") -> "Potential":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return Potential(self.ctx, terms)

    def __sub__(self, other: "Potential") -> "Potential":
        return self + other.scale(-1)

    def scale(self, c) -> "Potential":
        c = Fraction(c)
        return Potential(self.ctx, {w: c * x for w, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self.terms == other.terms

    def max_arrow_length(self) -> int:
        return max((w.arrow_length for w in self.terms), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: t[0].sort_key())
        return " + ".join(f"{c}*{w}" for w, c in items)


def cyclic_from_open(ctx: AlgebraContext, word: PathWord) -> Optional[CyclicWord]:
    """Close an open path (head == tail) into a canonical cyclic word."""
    if word.head != word.tail or not word.arrows:
        raise ValueError("word does not close up")
    merged = word.loops[0] + word.loops[-1]
    if merged >= ctx.degree(word.head):
        return None
    loops = (merged,) + word.loops[1:-1]
    cyc = CyclicWord.make(word.arrows, loops)
    return cyc if cyc.is_valid(ctx) else None


def potential_from_element(ctx: AlgebraContext, elem: AlgElement) -> Potential:
    terms: Dict[CyclicWord, Fraction] = {}
    for word, coeff in elem.terms.items():
        cyc = cyclic_from_open(ctx, word)
        if cyc is None:
            continue
        s = terms.get(cyc, Fraction(0)) + coeff
        if s:
            terms[cyc] = s
        else:
            terms.pop(cyc, None)
    return Potential(ctx, terms)


# -- cyclic derivatives -------------------------------------------------

def cyclic_derivative(potential: Potential, arrow: Arrow) -> AlgElement:
    """Rotation derivative with respect to a non-loop arrow."""
    ctx = potential.ctx
    out = AlgElement.zero(ctx)
    for word, coeff in potential.terms.items():
        m = word.arrow_length
        for i in range(m):
            if word.arrows[i] != arrow:
                continue
            arrows = tuple(word.arrows[(i + 1 + t) % m] for t in range(m - 1))
            loops = tuple(word.loops[(i + 1 + t) % m] for t in range(m - 1)) + (
                word.loops[i],
            )
            open_word = PathWord(arrows, loops, arrow.tail if not arrows else 0)
            out = out + AlgElement.of_word(ctx, open_word, coeff)
    return out


def eps_derivative(potential: Potential, k: int) -> AlgElement:
    """Formal extension of the rotation derivative to the loop at vertex k."""
    ctx = potential.ctx
    out = AlgElement.zero(ctx)
    for word, coeff in potential.terms.items():
        m = word.arrow_length
        for i in range(m):
            if word.slot_vertex(i) != k or word.loops[i] == 0:
                continue
            power = word.loops[i]
            arrows = tuple(word.arrows[(i + t) % m] for t in range(m))
            inner = tuple(word.loops[(i + t) % m] for t in range(1, m))
            for t in range(power):
                loops = (power - 1 - t,) + inner + (t,)
                out = out + AlgElement.of_word(ctx, PathWord(arrows, loops), coeff)
    return out


def composite_derivative(
    potential: Potential, b: Arrow, power: int, a: Arrow
) -> AlgElement:
    """Derivative with respect to the length-2 factor b * eps^power * a.

    Treats each occurrence of the factor (consecutive slots with that exact
    loop power between the two arrows) as a single letter and rotates.
    """
    ctx = potential.ctx
    out = AlgElement.zero(ctx)
    for word, coeff in potential.terms.items():
        m = word.arrow_length
        for i in range(m):
            j = (i + 1) % m
            if word.arrows[i] != b or word.arrows[j] != a or word.loops[j] != power:
                continue
            arrows = tuple(word.arrows[(j + 1 + t) % m] for t in range(m - 2))
            loops = tuple(word.loops[(j + 1 + t) % m] for t in range(m - 2)) + (
                word.loops[i],
            )
            open_word = PathWord(arrows, loops, a.tail if not arrows else 0)
            out = out + AlgElement.of_word(ctx, open_word, coeff)
    return out


# -- quivers with potentials ---------------------------------------------

class QP:
    """A quiver together with a potential over its arrows."""

    __slots__ = ("quiver", "potential", "ctx")

    def __init__(self, quiver: LoopedQuiver, potential: Potential):
        allowed = set(quiver.arrows)
        for word in potential.terms:
            if not word.uses_only(allowed):
                raise ValueError(f"potential word {word} uses arrows not in the quiver")
        self.quiver = quiver
        self.potential = potential
        self.ctx = potential.ctx

    @staticmethod
    def make(
        quiver: LoopedQuiver,
        cyclic_terms: Optional[Mapping[CyclicWord, Fraction]] = None,
        trunc: int = DEFAULT_TRUNCATION,
    ) -> "QP":
        ctx = AlgebraContext(quiver.datum.d, trunc)
        return QP(quiver, Potential(ctx, cyclic_terms))

    def is_reduced(self) -> bool:
        return not self._quadratic_part()

    def _quadratic_part(self) -> Dict[CyclicWord, Fraction]:
        return {
            w: c
            for w, c in self.potential.terms.items()
            if w.arrow_length == 2 and all(l == 0 for l in w.loops)
        }

    def __repr__(self) -> str:
        return f"QP({self.quiver!r}, S={self.potential!r})"


@dataclass
class Premutation:
    """Result of the 3-step substitution at a vertex, before reduction."""

    qp: QP
    k: int
    composite: Dict[Tuple[Arrow, int, Arrow], Arrow]  # (b, power, a) -> [b eps^l a]
    reversed_in: Dict[Arrow, Arrow]  # a: i -> k   maps to  a*: k -> i
    reversed_out: Dict[Arrow, Arrow]  # b: k -> j  maps to  b*: j -> k


def premutate_qp(qp: QP, k: int) -> Premutation:
    """Substitution step of mutation: composite arrows plus reversed arrows."""
    quiver = qp.quiver
    into = quiver.arrows_into(k)
    out_of = quiver.arrows_out_of(k)
    if {a.tail for a in into} & {b.head for b in out_of}:
        bad = min({a.tail for a in into} & {b.head for b in out_of})
        raise TwoCycleError(min(k, bad), max(k, bad))
    dk = quiver.datum.d[k - 1]
    kept = [c for c in quiver.arrows if c.head != k and c.tail != k]
    counters: Dict[Tuple[int, int], int] = {}
    for c in kept:
        key = (c.tail, c.head)
        counters[key] = max(counters.get(key, -1), c.ordinal)

    def fresh(tail: int, head: int) -> Arrow:
        ordinal = counters.get((tail, head), -1) + 1
        counters[(tail, head)] = ordinal
        return Arrow(tail, head, ordinal)
    composite: Dict[Tuple[Arrow, int, Arrow], Arrow] = {}
    for a in into:
        for b in out_of:
            for power in range(dk):
                composite[(b, power, a)] = fresh(a.tail, b.head)
    reversed_in = {a: fresh(k, a.tail) for a in into}
    reversed_out = {b: fresh(b.head, k) for b in out_of}
    new_arrows = kept + list(composite.values()) + list(reversed_in.values()) + list(
        reversed_out.values()
    )
    new_quiver = LoopedQuiver(quiver.n, quiver.datum, new_arrows)
    ctx = AlgebraContext(quiver.datum.d, qp.ctx.trunc)

    # [S]: replace each passage through k by the matching composite arrow
    new_terms: Dict[CyclicWord, Fraction] = {}
    for word, coeff in qp.potential.terms.items():
        m = word.arrow_length
        arrows: List[Arrow] = []
        loops: List[int] = []
        i = 0
        order = list(range(m))
        # start scanning at a slot whose arrow does not end at k, so factors
        # through k never wrap around the rotation point
        start = next((t for t in range(m) if word.arrows[t].head != k), None)
        if start is None:
            raise ValueError("potential word lives entirely at the mutation vertex")
        order = [(start + t) % m for t in range(m)]
        t = 0
        while t < m:
            idx = order[t]
            arrow = word.arrows[idx]
            if arrow.tail == k:
                nxt = order[(t + 1) % m]
                inner = word.arrows[nxt]
                comp = composite[(arrow, word.loops[nxt], inner)]
                arrows.append(comp)
                loops.append(word.loops[idx])
                t += 2
            else:
                arrows.append(arrow)
                loops.append(word.loops[idx])
                t += 1
        cyc = CyclicWord.make(arrows, loops)
        if cyc.is_valid(ctx) and cyc.arrow_length <= ctx.trunc:
            new_terms[cyc] = new_terms.get(cyc, Fraction(0)) + coeff

    # Delta_k = sum over pairs and powers of [b eps^l a] a* eps^(d-1-l) b*
    for a in into:
        for b in out_of:
            for power in range(dk):
                comp = composite[(b, power, a)]
                word = CyclicWord.make(
                    (comp, reversed_in[a], reversed_out[b]),
                    (0, 0, dk - 1 - power),
                )
                new_terms[word] = new_terms.get(word, Fraction(0)) + 1

    new_potential = Potential(ctx, new_terms)
    return Premutation(QP(new_quiver, new_potential), k, composite, reversed_in, reversed_out)


# -- arrow substitutions and reduction ------------------------------------

class ArrowSubstitution:
    """Algebra endomorphism determined by images of finitely many arrows."""

    __slots__ = ("ctx", "images")

    def __init__(self, ctx: AlgebraContext, images: Mapping[Arrow, AlgElement]):
        self.ctx = ctx
        self.images = dict(images)

    def image_of(self, arrow: Arrow) -> AlgElement:
        img = self.images.get(arrow)
        if img is None:
            return AlgElement.of_word(self.ctx, arrow_word(arrow))
        return img

    def apply_element(self, elem: AlgElement) -> AlgElement:
        out = AlgElement.zero(self.ctx)
        for word, coeff in elem.terms.items():
            out = out + self._apply_word(word).scale(coeff)
        return out

    def _apply_word(self, word: PathWord) -> AlgElement:
        result = AlgElement.of_word(self.ctx, idem(word.head, word.loops[0]))
        for i, arrow in enumerate(word.arrows):
            result = result * self.image_of(arrow)
            result = result * AlgElement.of_word(
                self.ctx, idem(word.junction_vertex(i + 1), word.loops[i + 1])
            )
        return result

    def apply_potential(self, potential: Potential) -> Potential:
        out: Dict[CyclicWord, Fraction] = {}
        for word, coeff in potential.terms.items():
            open_word = PathWord(word.arrows, word.loops + (0,))
            image = self._apply_word(open_word)
            partial = potential_from_element(self.ctx, image)
            for w, c in partial.terms.items():
                s = out.get(w, Fraction(0)) + coeff * c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return Potential(self.ctx, out)

    def compose_after(self, first: "ArrowSubstitution") -> "ArrowSubstitution":
        """self o first: apply ``first``, then ``self``."""
        images = {a: self.apply_element(img) for a, img in first.images.items()}
        for a, img in self.images.items():
            if a not in images:
                images[a] = img
        return ArrowSubstitution(self.ctx, images)


def unitriangular_inverse(sub: ArrowSubstitution, rounds: int) -> ArrowSubstitution:
    """Inverse of a substitution of the form arrow -> arrow + higher terms."""
    ctx = sub.ctx
    inverse = ArrowSubstitution(ctx, {})
    for _ in range(rounds):
        images = {}
        for arrow, img in sub.images.items():
            correction = img - AlgElement.of_word(ctx, arrow_word(arrow))
            images[arrow] = AlgElement.of_word(ctx, arrow_word(arrow)) - inverse.apply_element(
                correction
            )
        nxt = ArrowSubstitution(ctx, images)
        if all(nxt.images[a] == inverse.images.get(a) for a in nxt.images) and set(
            nxt.images
        ) == set(inverse.images):
            return nxt
        inverse = nxt
    return inverse


@dataclass
class SplitResult:
    trivial: QP
    reduced: QP
    # arrow of the reduced/trivial quiver -> element of the premutated algebra
    backward: Dict[Arrow, AlgElement]
    pairs: List[Tuple[Arrow, Arrow]]


def split_reduce(qp: QP) -> SplitResult:
    """Split off the 2-cycle part; the reduced part has no loop-free quadratics.

    Implements the iterative unitriangular substitution; the pairing of
    opposite arrows is chosen greedily by coefficient magnitude with full
    pivoting, which realizes a maximal pairing of nonzero determinant when
    one exists and raises DegeneratePotential otherwise.
    """
    ctx = qp.ctx
    quiver = qp.quiver
    quad = {
        w: c
        for w, c in qp.potential.terms.items()
        if w.arrow_length == 2 and all(l == 0 for l in w.loops)
    }
    # group opposite arrows by unordered vertex pair
    vertex_pairs = sorted(
        {
            (min(t, h), max(t, h))
            for t, h in {(a.tail, a.head) for a in quiver.arrows}
            if quiver.arrow_count(h, t) and quiver.arrow_count(t, h)
        }
    )
    linear_images: Dict[Arrow, AlgElement] = {}
    back_linear: Dict[Arrow, AlgElement] = {}
    pairs: List[Tuple[Arrow, Arrow]] = []
    replaced: Dict[Arrow, List[Arrow]] = {}
    new_arrow_lists: Dict[Tuple[int, int], List[Arrow]] = {}

    for (i, j) in vertex_pairs:
        ps = [a for a in quiver.arrows if a.tail == i and a.head == j]
        qs = [a for a in quiver.arrows if a.tail == j and a.head == i]
        x = [[Fraction(0)] * len(ps) for _ in qs]
        for qi, q_arrow in enumerate(qs):
            for pi, p_arrow in enumerate(ps):
                word = CyclicWord.make((p_arrow, q_arrow), (0, 0))
                x[qi][pi] = quad.get(word, Fraction(0))
        r_needed = min(len(ps), len(qs))
        u, v, r = _full_pivot_normalize(x)
        if r < r_needed:
            raise DegeneratePotential(
                f"2-cycles between {i} and {j} cannot be fully paired (rank {r})"
            )
        # Fresh identities for the transformed arrows.  With old arrows
        # expressed as p = V p' and q = U^T q', the loop-free quadratic part
        # becomes exactly sum of the first r_needed pair words p'_t q'_t.
        base_p = max(a.ordinal for a in ps) + 1
        base_q = max(a.ordinal for a in qs) + 1
        new_ps = [Arrow(i, j, base_p + t) for t in range(len(ps))]
        new_qs = [Arrow(j, i, base_q + t) for t in range(len(qs))]
        v_inv = _invert(v)
        u_inv = _invert(u)
        for pi, p_arrow in enumerate(ps):
            img = AlgElement.zero(ctx)
            for t in range(len(ps)):
                img = img + AlgElement.of_word(ctx, arrow_word(new_ps[t]), v[pi][t])
            linear_images[p_arrow] = img
            replaced[p_arrow] = new_ps
        for qi, q_arrow in enumerate(qs):
            img = AlgElement.zero(ctx)
            for t in range(len(qs)):
                img = img + AlgElement.of_word(ctx, arrow_word(new_qs[t]), u[t][qi])
            linear_images[q_arrow] = img
            replaced[q_arrow] = new_qs
        for t, new_p in enumerate(new_ps):
            img = AlgElement.zero(ctx)
            for pi, p_arrow in enumerate(ps):
                img = img + AlgElement.of_word(ctx, arrow_word(p_arrow), v_inv[t][pi])
            back_linear[new_p] = img
        for t, new_q in enumerate(new_qs):
            img = AlgElement.zero(ctx)
            for qi, q_arrow in enumerate(qs):
                img = img + AlgElement.of_word(ctx, arrow_word(q_arrow), u_inv[qi][t])
            back_linear[new_q] = img
        pairs.extend((new_ps[t], new_qs[t]) for t in range(r_needed))
        new_arrow_lists[(i, j)] = new_ps
        new_arrow_lists[(j, i)] = new_qs

    untouched = [a for a in quiver.arrows if a not in replaced]
    all_new_arrows = untouched + [a for lst in new_arrow_lists.values() for a in lst]
    work_quiver = LoopedQuiver(quiver.n, quiver.datum, all_new_arrows)
    change = ArrowSubstitution(ctx, linear_images)
    potential = change.apply_potential(qp.potential)
    backward_total = ArrowSubstitution(ctx, back_linear)

    trivial_arrows = {a for pair in pairs for a in pair}
    partner: Dict[Arrow, Arrow] = {}
    for p_arrow, q_arrow in pairs:
        partner[p_arrow] = q_arrow
        partner[q_arrow] = p_arrow
    max_rounds = ctx.trunc * (1 + max(ctx.d)) + 4
    for _ in range(max_rounds):
        offending = _offending_words(potential, pairs, trivial_arrows)
        if not offending:
            break
        # rotate each offending word at one trivial occurrence: W ~ t * u,
        # killed by substituting the partner of t by partner - u
        corrections: Dict[Arrow, AlgElement] = {}
        for word in offending:
            coeff = potential.terms[word]
            m = word.arrow_length
            slot = next(i for i in range(m) if word.arrows[i] in trivial_arrows)
            t_arrow = word.arrows[slot]
            rest_arrows = tuple(word.arrows[(slot + 1 + t) % m] for t in range(m - 1))
            rest_loops = tuple(
                word.loops[(slot + 1 + t) % m] for t in range(m - 1)
            ) + (word.loops[slot],)
            rotation = PathWord(rest_arrows, rest_loops,
                                t_arrow.tail if not rest_arrows else 0)
            target = partner[t_arrow]
            bucket = corrections.get(target, AlgElement.zero(ctx))
            corrections[target] = bucket + AlgElement.of_word(ctx, rotation, coeff)
        images = {
            arrow: AlgElement.of_word(ctx, arrow_word(arrow)) - corr
            for arrow, corr in corrections.items()
            if not corr.is_zero()
        }
        if not images:
            raise RuntimeError("reduction stalled on words it cannot remove")
        step = ArrowSubstitution(ctx, images)
        potential = step.apply_potential(potential)
        step_inverse = unitriangular_inverse(step, max_rounds)
        backward_total = backward_total_then(backward_total, step_inverse)
    else:
        raise RuntimeError("reduction did not terminate within the truncation budget")

    pair_terms: Dict[CyclicWord, Fraction] = {}
    reduced_terms: Dict[CyclicWord, Fraction] = {}
    for word, coeff in potential.terms.items():
        if any(a in trivial_arrows for a in word.arrows):
            pair_terms[word] = coeff
        else:
            reduced_terms[word] = coeff
    reduced_arrows = [a for a in all_new_arrows if a not in trivial_arrows]
    reduced_quiver = LoopedQuiver(quiver.n, quiver.datum, reduced_arrows)
    trivial_quiver = LoopedQuiver(quiver.n, quiver.datum, sorted(trivial_arrows))
    trivial_qp = QP(trivial_quiver, Potential(ctx, pair_terms))
    reduced_qp = QP(reduced_quiver, Potential(ctx, reduced_terms))
    backward = {a: backward_total.image_of(a) for a in all_new_arrows}
    return SplitResult(trivial_qp, reduced_qp, backward, pairs)


def backward_total_then(
    current: ArrowSubstitution, step_inverse: ArrowSubstitution
) -> ArrowSubstitution:
    """Update a backward transport map by a later forward step's inverse."""
    images = {}
    for arrow in set(current.images) | set(step_inverse.images):
        images[arrow] = current.apply_element(step_inverse.image_of(arrow))
    return ArrowSubstitution(current.ctx, images)


def _offending_words(
    potential: Potential, pairs: Sequence[Tuple[Arrow, Arrow]], trivial: set
) -> List[CyclicWord]:
    pair_words = {CyclicWord.make((p, q), (0, 0)) for p, q in pairs}
    return [
        w
        for w in potential.terms
        if w not in pair_words and any(a in trivial for a in w.arrows)
    ]


def _full_pivot_normalize(x: List[List[Fraction]]):
    """Row/column operations with greedy full pivoting: U X V = [[I,0],[0,0]].

    Pivots are picked by descending absolute value, ties broken by position,
    matching the deterministic pairing contract.
    """
    rows = len(x)
    cols = len(x[0]) if rows else 0
    a = [row[:] for row in x]
    u = [[Fraction(1) if i == j else Fraction(0) for j in range(rows)] for i in range(rows)]
    v = [[Fraction(1) if i == j else Fraction(0) for j in range(cols)] for i in range(cols)]
    r = 0
    while True:
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if a[i][j] != 0:
                    key = (abs(a[i][j]), -i, -j)
                    if best is None or key > best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        a[r], a[pi] = a[pi], a[r]
        u[r], u[pi] = u[pi], u[r]
        for row in a:
            row[r], row[pj] = row[pj], row[r]
        for row in v:
            row[r], row[pj] = row[pj], row[r]
        pivot = a[r][r]
        a[r] = [entry / pivot for entry in a[r]]
        u[r] = [entry / pivot for entry in u[r]]
        for i in range(rows):
            if i != r and a[i][r] != 0:
                factor = a[i][r]
                a[i] = [entry - factor * pr for entry, pr in zip(a[i], a[r])]
                u[i] = [entry - factor * pr for entry, pr in zip(u[i], u[r])]
        for j in range(cols):
            if j != r and a[r][j] != 0:
                factor = a[r][j]
                for i in range(rows):
                    a[i][j] -= factor * a[i][r]
                for i in range(cols):
                    v[i][j] -= factor * v[i][r]
        r += 1
        if r == min(rows, cols):
            break
    return u, v, r


def _invert(mat: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(mat)
    aug = [list(mat[i]) + [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, QQ)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def mutate_qp(qp: QP, k: int) -> QP:
    """Full mutation: substitution at k followed by splitting off 2-cycles."""
    if not qp.is_reduced():
        raise ValueError("mutation requires a reduced quiver with potential")
    pre = premutate_qp(qp, k)
    return split_reduce(pre.qp).reduced


def random_potential(
    quiver: LoopedQuiver,
    max_len: int,
    coeff_bound: int,
    rng_seed: int,
    trunc: int = DEFAULT_TRUNCATION,
) -> Potential:
    """Uniform integer coefficients on all cyclic words up to the length cap."""
    ctx = AlgebraContext(quiver.datum.d, trunc)
    words = sorted(enumerate_cyclic_words(quiver, max_len, ctx), key=CyclicWord.sort_key)
    rng = random.Random(rng_seed)
    terms = {w: Fraction(rng.randint(-coeff_bound, coeff_bound)) for w in words}
    return Potential(ctx, terms)


def enumerate_cyclic_words(
    quiver: LoopedQuiver, max_len: int, ctx: AlgebraContext
) -> List[CyclicWord]:
    """All canonical cyclic words of arrow-length <= max_len."""
    by_head: Dict[int, List[Arrow]] = {}
    for a in quiver.arrows:
        by_head.setdefault(a.head, []).append(a)
    cycles: set = set()

    def extend(path: List[Arrow], start: int):
        last = path[-1]
        if len(path) >= 2 and last.tail == start:
            for loops in itertools.product(
                *(range(ctx.degree(a.head)) for a in path)
            ):
                word = CyclicWord.make(tuple(path), loops)
                if word.is_valid(ctx):
                    cycles.add(word)
        if len(path) == max_len:
            return
        for nxt in by_head.get(last.tail, []):
            extend(path + [nxt], start)

    for a in sorted(quiver.arrows):
        extend([a], a.head)
    return sorted(cycles, key=CyclicWord.sort_key)
