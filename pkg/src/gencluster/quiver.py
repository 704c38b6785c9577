"""Quivers with one nilpotent loop per vertex: arrow- and matrix-level mutation.

Vertices are 1-based integers.  The loop at vertex i is implicit with
nilpotency degree d_i; only non-loop arrows are stored, as (tail, head,
ordinal) triples so potentials can reference them stably.

Matrix convention: a positive entry b[i][j] means there are b[i][j] arrows
from j to i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

ZValue = Union[Fraction, str]


class TwoCycleError(ValueError):
    """Raised when an operation requires 2-acyclicity that fails."""

    def __init__(self, i: int, j: int):
        super().__init__(f"oriented 2-cycle between vertices {i} and {j}")
        self.witness = (i, j)


def canonical_z_name(i: int, s: int, d_i: int) -> str:
    """Canonical symbol for z_{i,s}; reciprocity folds s onto min(s, d_i - s)."""
    return f"z{i}_{min(s, d_i - s)}"


@dataclass(frozen=True)
class MutationData:
    """Mutation degrees d_i plus exchange-polynomial coefficients z_{i,s}.

    ``z[i-1]`` lists the values z_{i,0} .. z_{i,d_i}; endpoints are 1 and
    the reciprocity z_{i,s} = z_{i,d_i-s} is enforced.  Interior entries may
    be exact rationals or symbol names (the default is the canonical symbol).
    """

    d: Tuple[int, ...]
    z: Tuple[Tuple[ZValue, ...], ...]

    @staticmethod
    def make(d: Sequence[int], z: Optional[Dict[int, Sequence]] = None) -> "MutationData":
        d = tuple(int(x) for x in d)
        if any(x < 1 for x in d):
            raise ValueError("mutation degrees must be positive")
        rows: List[Tuple[ZValue, ...]] = []
        for i, di in enumerate(d, start=1):
            if z is not None and i in z:
                row = [_z_entry(v) for v in z[i]]
                if len(row) != di + 1:
                    raise ValueError(f"vertex {i} needs {di + 1} z-values")
            else:
                row = [
                    Fraction(1) if s in (0, di) else canonical_z_name(i, s, di)
                    for s in range(di + 1)
                ]
            if row[0] != 1 or row[di] != 1:
                raise ValueError(f"z_{{{i},0}} and z_{{{i},{di}}} must be 1")
            for s in range(di + 1):
                if row[s] != row[di - s]:
                    raise ValueError(f"reciprocity fails at vertex {i}, s={s}")
            rows.append(tuple(row))
        return MutationData(d, tuple(rows))

    @property
    def n(self) -> int:
        return len(self.d)

    def z_value(self, i: int, s: int) -> ZValue:
        return self.z[i - 1][s]

    def symbolic_names(self) -> List[str]:
        """All distinct symbolic z-names, in vertex-then-index order."""
        names: List[str] = []
        for row in self.z:
            for v in row:
                if isinstance(v, str) and v not in names:
                    names.append(v)
        return names


def _z_entry(v) -> ZValue:
    if isinstance(v, str):
        return v
    return Fraction(v)


@dataclass(frozen=True, order=True)
class Arrow:
    tail: int
    head: int
    ordinal: int

    def reversed(self, ordinal: int) -> "Arrow":
        return Arrow(self.head, self.tail, ordinal)

    def __repr__(self) -> str:
        return f"a({self.tail}->{self.head}#{self.ordinal})"


class LoopedQuiver:
    """Vertex set with mutation data and a multiset of non-loop arrows."""

    __slots__ = ("n", "datum", "arrows")

    def __init__(self, n: int, datum: MutationData, arrows: Sequence[Arrow]):
        if datum.n != n:
            raise ValueError("mutation data size differs from vertex count")
        for a in arrows:
            if a.tail == a.head:
                raise ValueError(f"loops are implicit; got explicit loop {a}")
            if not (1 <= a.tail <= n and 1 <= a.head <= n):
                raise ValueError(f"arrow {a} out of range")
        seen = set()
        for a in arrows:
            if a in seen:
                raise ValueError(f"duplicate arrow identity {a}")
            seen.add(a)
        self.n = n
        self.datum = datum
        self.arrows = tuple(sorted(arrows))

    @staticmethod
    def from_pairs(
        n: int, d: Sequence[int], pairs: Sequence[Tuple[int, int]], z=None
    ) -> "LoopedQuiver":
        datum = MutationData.make(d, z)
        counters: Dict[Tuple[int, int], int] = {}
        arrows = []
        for tail, head in pairs:
            ordinal = counters.get((tail, head), 0)
            counters[(tail, head)] = ordinal + 1
            arrows.append(Arrow(tail, head, ordinal))
        return LoopedQuiver(n, datum, arrows)

    @staticmethod
    def from_matrix(b: Sequence[Sequence[int]], d: Sequence[int], z=None) -> "LoopedQuiver":
        n = len(b)
        check_skew_symmetric(b)
        pairs = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                count = b[i - 1][j - 1]
                if count > 0:
                    pairs.extend([(j, i)] * count)
        return LoopedQuiver.from_pairs(n, d, pairs, z)

    def arrow_count(self, tail: int, head: int) -> int:
        return sum(1 for a in self.arrows if a.tail == tail and a.head == head)

    def b_matrix(self) -> List[List[int]]:
        b = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            b[a.head - 1][a.tail - 1] += 1
            b[a.tail - 1][a.head - 1] -= 1
        return b

    def arrows_into(self, k: int) -> List[Arrow]:
        return [a for a in self.arrows if a.head == k]

    def arrows_out_of(self, k: int) -> List[Arrow]:
        return [a for a in self.arrows if a.tail == k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopedQuiver):
            return NotImplemented
        return (
            self.n == other.n
            and self.datum == other.datum
            and self.arrows == other.arrows
        )

    def __repr__(self) -> str:
        return f"LoopedQuiver(n={self.n}, d={self.datum.d}, arrows={list(self.arrows)})"

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        z_block = {}
        for i, row in enumerate(self.datum.z, start=1):
            z_block[str(i)] = [str(v) if isinstance(v, str) else _frac_str(v) for v in row]
        return {
            "n": self.n,
            "d": list(self.datum.d),
            "z": z_block,
            "arrows": [[a.tail, a.head] for a in self.arrows],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "LoopedQuiver":
        z = None
        if data.get("z"):
            z = {
                int(i): [_parse_z(v) for v in row]
                for i, row in data["z"].items()
            }
        return LoopedQuiver.from_pairs(
            data["n"], data["d"], [tuple(p) for p in data["arrows"]], z
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for i in range(1, self.n + 1):
            d_i = self.datum.d[i - 1]
            lines.append(f'  v{i} [label="{i} (loop^{d_i})"];')
        counts: Dict[Tuple[int, int], int] = {}
        for a in self.arrows:
            counts[(a.tail, a.head)] = counts.get((a.tail, a.head), 0) + 1
        for (tail, head), count in sorted(counts.items()):
            label = f' [label="{count}"]' if count > 1 else ""
            lines.append(f"  v{tail} -> v{head}{label};")
        lines.append("}")
        return "\n".join(lines)


def _frac_str(v: Fraction) -> str:
    return str(v)


def _parse_z(v) -> ZValue:
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            return v
    return Fraction(v)


def check_skew_symmetric(b: Sequence[Sequence[int]]) -> None:
    n = len(b)
    for row in b:
        if len(row) != n:
            raise ValueError("exchange matrix must be square")
    for i in range(n):
        for j in range(n):
            if b[i][j] != -b[j][i]:
                raise ValueError(f"matrix is not skew-symmetric at ({i + 1},{j + 1})")


def is_two_acyclic(quiver: LoopedQuiver) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """True plus None, or False plus an offending vertex pair (i, j)."""
    counts: Dict[Tuple[int, int], int] = {}
    for a in quiver.arrows:
        counts[(a.tail, a.head)] = counts.get((a.tail, a.head), 0) + 1
    for (tail, head) in sorted(counts):
        if tail < head and counts.get((head, tail)):
            return False, (tail, head)
    return True, None


def _pos(x: int) -> int:
    return x if x > 0 else 0


def mutate_matrix(
    b: Sequence[Sequence[int]], datum: MutationData, k: int
) -> List[List[int]]:
    """Exchange-matrix mutation at vertex k (1-based), degree-weighted."""
    check_skew_symmetric(b)
    n = len(b)
    if not 1 <= k <= n:
        raise ValueError(f"vertex {k} out of range 1..{n}")
    dk = datum.d[k - 1]
    ki = k - 1
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == ki or j == ki:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + dk * (
                    _pos(b[i][ki]) * _pos(b[ki][j]) - _pos(-b[i][ki]) * _pos(-b[ki][j])
                )
    return out


def mutate_quiver(quiver: LoopedQuiver, k: int) -> LoopedQuiver:
    """Arrow-level mutation at k: compose through k, reverse at k, cancel 2-cycles."""
    ok, witness = _two_acyclic_at(quiver, k)
    if not ok:
        raise TwoCycleError(*witness)
    dk = quiver.datum.d[k - 1]
    pairs: List[Tuple[int, int]] = []
    # Step 1: d_k composite arrows i -> j for each path i -> k -> j
    for a in quiver.arrows_into(k):
        for b in quiver.arrows_out_of(k):
            pairs.extend([(a.tail, b.head)] * dk)
    # Step 2: reverse arrows incident to k; Step 3 happens on counts below
    for a in quiver.arrows:
        if a.head == k or a.tail == k:
            pairs.append((a.head, a.tail))
        else:
            pairs.append((a.tail, a.head))
    counts: Dict[Tuple[int, int], int] = {}
    for p in pairs:
        counts[p] = counts.get(p, 0) + 1
    final_pairs: List[Tuple[int, int]] = []
    seen_pairs = sorted({(min(t, h), max(t, h)) for (t, h) in counts})
    for (lo, hi) in seen_pairs:
        forward = counts.get((lo, hi), 0)
        backward = counts.get((hi, lo), 0)
        cancel = min(forward, backward)
        final_pairs.extend([(lo, hi)] * (forward - cancel))
        final_pairs.extend([(hi, lo)] * (backward - cancel))
    return LoopedQuiver.from_pairs(quiver.n, quiver.datum.d, final_pairs,
                                   _z_dict(quiver.datum))


def _z_dict(datum: MutationData) -> Dict[int, Sequence]:
    return {i: list(row) for i, row in enumerate(datum.z, start=1)}


def _two_acyclic_at(quiver: LoopedQuiver, k: int) -> Tuple[bool, Optional[Tuple[int, int]]]:
    into = {a.tail for a in quiver.arrows_into(k)}
    out = {a.head for a in quiver.arrows_out_of(k)}
    bad = into & out
    if bad:
        j = min(bad)
        return False, (min(k, j), max(k, j))
    return True, None
