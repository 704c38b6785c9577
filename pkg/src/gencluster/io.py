"""Canonical JSON import/export for every data kind.

Dumps are deterministic (sorted keys, fixed separators) so that
export -> import -> export is byte-identical.  Rationals travel as "p/q"
strings, polynomials as their canonical text form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import LaurentPoly, PolyContext, TropicalValue
from .gca import ExchangeGraph, Seed, seed_context
from .pathalg import QP, AlgebraContext, CyclicWord, Potential
from .quiver import Arrow, LoopedQuiver, MutationData
from .reps import DecoratedRep


def dumps_canonical(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def frac_str(value: Fraction) -> str:
    return str(Fraction(value))


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


# -- polynomials ------------------------------------------------------------

def poly_to_str(poly: LaurentPoly) -> str:
    return poly.canonical()


def parse_poly(ctx: PolyContext, text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(ctx)
    total = LaurentPoly.zero(ctx)
    for chunk in text.split(" + "):
        factors = chunk.split("*")
        coeff = Fraction(factors[0])
        exp = [0] * len(ctx)
        for token in factors[1:]:
            if "^" in token:
                name, power = token.split("^")
                exp[ctx.index[name]] += int(power)
            else:
                exp[ctx.index[token]] += 1
        total = total + LaurentPoly.monomial(ctx, tuple(exp), coeff)
    return total


# -- quivers and QPs ---------------------------------------------------------

def quiver_to_dict(quiver: LoopedQuiver) -> dict:
    return quiver.to_json_dict()


def quiver_from_dict(data: dict) -> LoopedQuiver:
    return LoopedQuiver.from_json_dict(data)


def qp_to_dict(qp: QP) -> dict:
    terms = []
    for word in sorted(qp.potential.terms, key=CyclicWord.sort_key):
        coeff = qp.potential.terms[word]
        terms.append(
            {
                "word": [
                    [word.loops[i], [a.tail, a.head, a.ordinal]]
                    for i, a in enumerate(word.arrows)
                ],
                "coeff": frac_str(coeff),
            }
        )
    return {
        "quiver": quiver_to_dict(qp.quiver),
        "arrows": [[a.tail, a.head, a.ordinal] for a in qp.quiver.arrows],
        "trunc": qp.ctx.trunc,
        "terms": terms,
    }


def qp_from_dict(data: dict) -> QP:
    quiver_data = dict(data["quiver"])
    base = quiver_from_dict(quiver_data)
    arrows = [Arrow(t, h, o) for t, h, o in data.get("arrows", [])]
    if arrows:
        quiver = LoopedQuiver(base.n, base.datum, arrows)
    else:
        quiver = base
    ctx = AlgebraContext(quiver.datum.d, data.get("trunc", 12))
    terms = {}
    for item in data.get("terms", []):
        loops = [entry[0] for entry in item["word"]]
        arrws = [Arrow(*entry[1]) for entry in item["word"]]
        word = CyclicWord.make(arrws, loops)
        terms[word] = parse_frac(item["coeff"])
    return QP(quiver, Potential(ctx, terms))


# -- representations ---------------------------------------------------------

def _matrix_to_lists(mat) -> List[List[str]]:
    return [[frac_str(x) for x in row] for row in mat]


def _matrix_from_lists(rows) -> List[List[Fraction]]:
    return [[parse_frac(x) for x in row] for row in rows]


def rep_to_dict(rep: DecoratedRep) -> dict:
    return {
        "dims": list(rep.dims),
        "loops": {str(i): _matrix_to_lists(rep.loops[i]) for i in sorted(rep.loops)},
        "arrows": [
            {
                "arrow": [a.tail, a.head, a.ordinal],
                "matrix": _matrix_to_lists(mat),
            }
            for a, mat in sorted(rep.arrows.items())
        ],
        "decoration": list(rep.decoration),
    }


def rep_from_dict(data: dict) -> DecoratedRep:
    dims = tuple(data["dims"])
    loops = {int(i): _matrix_from_lists(rows) for i, rows in data["loops"].items()}
    arrows = {
        Arrow(*item["arrow"]): _matrix_from_lists(item["matrix"])
        for item in data["arrows"]
    }
    return DecoratedRep(dims, loops, arrows, tuple(data["decoration"]))


# -- seeds --------------------------------------------------------------------

def seed_to_dict(seed: Seed) -> dict:
    principal = len(seed.trop_ctx) > len(seed.datum.symbolic_names())
    z_block = {}
    for i, row in enumerate(seed.datum.z, start=1):
        z_block[str(i)] = [str(v) if isinstance(v, str) else frac_str(v) for v in row]
    return {
        "n": seed.n,
        "d": list(seed.datum.d),
        "z": z_block,
        "b": [list(row) for row in seed.b],
        "x": [poly_to_str(p) for p in seed.x],
        "y": [list(t.exponents) for t in seed.y],
        "principal": principal,
        "history": list(seed.history),
    }


def seed_from_dict(data: dict) -> Seed:
    z = {int(i): [_z_parse(v) for v in row] for i, row in data["z"].items()}
    datum = MutationData.make(data["d"], z)
    principal = bool(data.get("principal", False))
    ctx, gens = seed_context(datum, principal)
    trop_ctx = PolyContext(gens)
    x = tuple(parse_poly(ctx, s) for s in data["x"])
    y = tuple(TropicalValue(trop_ctx, exps) for exps in data["y"])
    b = tuple(tuple(int(v) for v in row) for row in data["b"])
    return Seed(ctx, trop_ctx, datum, b, x, y, tuple(data.get("history", [])))


def _z_parse(v):
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            return v
    return Fraction(v)


# -- exchange graphs -----------------------------------------------------------

def graph_to_dict(graph: ExchangeGraph, records: Optional[Sequence] = None) -> dict:
    depth = {0: 0}
    for src, dst, _ in graph.edges:
        if dst not in depth and src in depth:
            depth[dst] = depth[src] + 1
    nodes = []
    for idx, seed in enumerate(graph.nodes):
        node = {
            "id": idx,
            "b": [list(row) for row in seed.b],
            "x": [poly_to_str(p) for p in seed.x],
            "depth": depth.get(idx, -1),
        }
        if records is not None and idx < len(records) and records[idx] is not None:
            node["g"] = [list(row) for row in records[idx].g]
        nodes.append(node)
    return {
        "complete": graph.complete,
        "nodes": nodes,
        "edges": [
            {"from": src, "to": dst, "k": k} for src, dst, k in graph.edges
        ],
    }


def graph_to_dot(graph: ExchangeGraph) -> str:
    lines = ["graph exchange {"]
    for idx in range(len(graph.nodes)):
        lines.append(f'  n{idx} [label="{idx}"];')
    for src, dst, k in graph.edges:
        lines.append(f'  n{src} -- n{dst} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines)


# -- typed dispatch -------------------------------------------------------------

def detect_kind(data: dict) -> str:
    if "terms" in data and "quiver" in data:
        return "qp"
    if "x" in data and "b" in data:
        return "seed"
    if "dims" in data and "loops" in data:
        return "rep"
    if "arrows" in data and "n" in data:
        return "quiver"
    raise ValueError("unrecognized payload")
