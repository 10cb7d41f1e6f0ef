"""Cell preorders, the a- and delta-functions, distinguished elements, and
decategorified verification of the P-properties (P1, P2, P3, P5, P6, P13).

The left preorder is generated by x -> z whenever the canonical basis
element of z occurs in a product (canonical generator) * (canonical of x);
strongly connected components are cells.  On the split Grothendieck level,

    a(x)      = max degree of a structure constant f_{y,z,x},
    delta(x)  = valuation of h_{e,x},

and the distinguished elements are those with a(x) = delta(x).  For finite
systems the sweep over (y, z) is exhaustive so everything is exact; on
truncated affine balls the a-values are lower bounds with an explicit
exactness flag, and cell membership is certified away from the boundary
(stability margin L - 2 l(w0)).
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .coxeter import CoxElt, CoxeterSystem, IDENTITY
from .hecke import KLTable, Vec, _add_term
from .laurent import LaurentPoly


@dataclass
class CellData:
    element: CoxElt
    a_value: int
    a_exact: bool
    delta_value: int
    cell_ids: tuple[int, int, int]  # (left, right, two-sided) class indices
    is_duflo: bool


@dataclass
class CellPartition:
    side: str                          # "left" | "right" | "twosided"
    classes: list[tuple[CoxElt, ...]]  # sorted by (min length, min word)
    preorder: list[tuple[int, int]]    # DAG edges between class indices
    stability_margin: int | None       # lengths certified; None = all
    provisional: tuple[CoxElt, ...] = ()

    def class_of(self, x: CoxElt) -> int:
        for i, cls in enumerate(self.classes):
            if x in cls:
                return i
        raise KeyError(str(x))


class FiniteProductTable:
    """All canonical-basis structure constants of a finite system."""

    def __init__(self, system: CoxeterSystem, kl: KLTable | None = None):
        if system.affine:
            raise ValueError("FiniteProductTable needs a finite system")
        self.system = system
        self.kl = kl or KLTable(system)
        self.elements = system.enumerate_ball(system.longest_length)
        self._f: dict[tuple[CoxElt, CoxElt], Vec] = {}
        self._build()

    def _build(self) -> None:
        sys = self.system
        kl = self.kl
        for x in self.elements:
            # M[w] = H_w * canonical(x), by prepending letters
            m: dict[CoxElt, Vec] = {IDENTITY: dict(kl.canonical(x))}
            for w in self.elements:
                if not w.word:
                    continue
                s = w.word[0]
                prev = m[sys.element(w.word[1:])]
                cur: Vec = {}
                for b, c in prev.items():
                    sb = sys.multiply_gen_left(s, b)
                    _add_term(cur, sb, c)
                    if sb.length < b.length:
                        _add_term(cur, b, (LaurentPoly(-1, [1]) - LaurentPoly(1, [1])) * c)
                m[w] = cur
            for y in self.elements:
                prod: Vec = {}
                for w, hw in kl.canonical(y).items():
                    for b, c in m[w].items():
                        _add_term(prod, b, c * hw)
                self._f[(y, x)] = kl.expand_in_canonical(prod)

    def f(self, y: CoxElt, x: CoxElt) -> Vec:
        return self._f[(y, x)]


def _edge_graph(system: CoxeterSystem, kl: KLTable, elements: list[CoxElt],
                max_product_length: int | None, side: str) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(elements)
    in_ball = set(elements)
    for x in elements:
        if max_product_length is not None and x.length + 1 > max_product_length:
            continue
        for s in system.generators:
            s_elt = system.element((s,))
            if side in ("left", "twosided"):
                for z in kl.product_canonical(s_elt, x):
                    if z in in_ball:
                        g.add_edge(x, z)
            if side in ("right", "twosided"):
                for z in kl.product_canonical(x, s_elt):
                    if z in in_ball:
                        g.add_edge(x, z)
    return g


def cell_partition(system: CoxeterSystem, side: str, max_length: int,
                   kl: KLTable | None = None) -> CellPartition:
    """Cells as strongly connected components of the multiplication graph."""
    if side not in ("left", "right", "twosided"):
        raise ValueError("side must be left, right or twosided")
    kl = kl or KLTable(system)
    if system.affine:
        elements = system.enumerate_ball(max_length)
        margin = max(max_length - 2 * system.longest_length, 0)
        graph = _edge_graph(system, kl, elements, max_length, side)
        certified = [x for x in elements if x.length <= margin]
        provisional = tuple(x for x in elements if x.length > margin)
        sub = graph.subgraph(certified)
        comps = list(nx.strongly_connected_components(sub))
        cond_src = sub
    else:
        elements = system.enumerate_ball(system.longest_length)
        margin = None
        graph = _edge_graph(system, kl, elements, None, side)
        provisional = ()
        comps = list(nx.strongly_connected_components(graph))
        cond_src = graph
    classes = sorted((tuple(sorted(c, key=lambda e: (e.length, e.word)))
                      for c in comps),
                     key=lambda c: (c[0].length, c[0].word))
    index = {x: i for i, cls in enumerate(classes) for x in cls}
    edges = set()
    for u, v in cond_src.edges():
        iu, iv = index[u], index[v]
        if iu != iv:
            edges.add((iu, iv))
    return CellPartition(side, classes, sorted(edges), margin, provisional)


def delta_function(kl: KLTable, x: CoxElt) -> int:
    """Valuation of h_{e,x} (finite for every x since e <= x)."""
    p = kl.h(IDENTITY, x)
    if p.is_zero():
        raise ValueError(f"h(e, {x}) vanished")
    return p.valuation


class FiniteCellAnalysis:
    """Exact a/delta/cell/distinguished data for one finite system."""

    def __init__(self, system: CoxeterSystem):
        if system.affine:
            raise ValueError("exact analysis requires a finite system")
        self.system = system
        self.kl = KLTable(system)
        self.products = FiniteProductTable(system, self.kl)
        self.elements = self.products.elements
        self.a: dict[CoxElt, int] = {x: 0 for x in self.elements}
        for (y, z), fs in self.products._f.items():
            for x, p in fs.items():
                d = p.degree
                if d > self.a[x]:
                    self.a[x] = d
        self.delta = {x: delta_function(self.kl, x) for x in self.elements}
        self.duflo = sorted((x for x in self.elements
                             if self.a[x] == self.delta[x]),
                            key=lambda e: (e.length, e.word))
        self.left = cell_partition(system, "left", 0, self.kl)
        self.right = cell_partition(system, "right", 0, self.kl)
        self.twosided = cell_partition(system, "twosided", 0, self.kl)

    def coeff_at_a(self, y: CoxElt, z: CoxElt, d: CoxElt) -> int:
        """Coefficient of v^{a(d)} in f_{y,z,d}."""
        p = self.products.f(y, z).get(d, LaurentPoly.zero())
        return p.coefficient(self.a[d])

    def cell_data(self) -> list[CellData]:
        """Per-element summary records, sorted by (length, word)."""
        duflo = set(self.duflo)
        out = []
        for x in self.elements:
            out.append(CellData(
                element=x,
                a_value=self.a[x],
                a_exact=True,
                delta_value=self.delta[x],
                cell_ids=(self.left.class_of(x), self.right.class_of(x),
                          self.twosided.class_of(x)),
                is_duflo=x in duflo,
            ))
        return out

    def check_properties(self) -> dict:
        """Decategorified P1, P2, P3, P5, P6, P13 with witness lists."""
        sys = self.system
        inv = {x: sys.inverse(x) for x in self.elements}
        duflo = set(self.duflo)
        fails: dict[str, list] = {k: [] for k in
                                  ("P1", "P2", "P3", "P5", "P6", "P13")}

        for x in self.elements:
            if not self.a[x] <= self.delta[x]:
                fails["P1"].append({"x": str(x), "a": self.a[x],
                                    "delta": self.delta[x]})

        for d in duflo:
            for (y, z), fs in self.products._f.items():
                p = fs.get(d)
                if p is not None and p.coefficient(self.a[d]) != 0:
                    if y != inv[z]:
                        fails["P2"].append({"d": str(d), "y": str(y), "z": str(z)})

        for z in self.elements:
            hits = [d for d in self.duflo
                    if self.coeff_at_a(inv[z], z, d) != 0]
            if len(hits) != 1:
                fails["P3"].append({"z": str(z), "hits": [str(d) for d in hits]})

        for d in self.duflo:
            for z in self.elements:
                c = self.coeff_at_a(inv[z], z, d)
                if c not in (0, 1):
                    fails["P5"].append({"d": str(d), "z": str(z), "coeff": c})
            he = self.kl.h(IDENTITY, d)
            if he.coefficient(self.delta[d]) != 1:
                fails["P5"].append({"d": str(d),
                                    "valuation_coeff": he.coefficient(self.delta[d])})

        for d in self.duflo:
            if d != inv[d]:
                fails["P6"].append({"d": str(d)})

        for partition, tag in ((self.left, "left"), (self.right, "right")):
            for cls in partition.classes:
                ds = [x for x in cls if x in duflo]
                if len(ds) != 1:
                    fails["P13"].append({"side": tag, "cell": [str(x) for x in cls],
                                         "duflo": [str(d) for d in ds]})
            if tag == "left":
                for cls in partition.classes:
                    d = next(x for x in cls if x in duflo)
                    for z in cls:
                        if self.coeff_at_a(inv[z], z, d) == 0:
                            fails["P13"].append({"side": tag, "d": str(d),
                                                 "z": str(z), "coeff": 0})

        report = {
            "type": sys.label,
            "duflo": [str(d) for d in self.duflo],
            "a_values": {str(x): self.a[x] for x in self.elements},
            "delta_values": {str(x): self.delta[x] for x in self.elements},
            "cells": {
                "left": [[str(x) for x in cls] for cls in self.left.classes],
                "right": [[str(x) for x in cls] for cls in self.right.classes],
                "twosided": [[str(x) for x in cls] for cls in self.twosided.classes],
            },
        }
        for key in sorted(fails):
            report[key] = "pass" if not fails[key] else {"fail": fails[key]}
        report["all_pass"] = all(not fails[k] for k in fails)
        return report


def check_P(system: CoxeterSystem) -> dict:
    return FiniteCellAnalysis(system).check_properties()


def duflo_elements(system: CoxeterSystem, max_length: int | None = None) -> list[CoxElt]:
    """Distinguished elements; exact for finite systems.

    For affine systems only the certified lower-bound variant is offered:
    elements whose a lower bound equals delta and is flagged exact.
    """
    if not system.affine:
        return FiniteCellAnalysis(system).duflo
    if max_length is None:
        raise ValueError("affine systems need a length bound")
    kl = KLTable(system)
    out = []
    for x in system.enumerate_ball(max_length - 2 * system.longest_length):
        a, exact = a_function(system, x, max_length, kl)
        if exact and a == delta_function(kl, x):
            out.append(x)
    return out


def a_function(system: CoxeterSystem, x: CoxElt, max_length: int,
               kl: KLTable | None = None) -> tuple[int, bool]:
    """Lusztig's a-function: max degree of f_{y,z,x} over a sweep.

    Exact for finite systems.  For affine systems the sweep is over pairs
    with l(y) + l(z) <= max_length; the value is a lower bound, claimed
    exact only when it is already attained with l(y) + l(z) <= max_length-2
    (stability under enlarging the ball) and x sits inside the margin.
    """
    kl = kl or KLTable(system)
    if not system.affine:
        analysis = FiniteCellAnalysis(system)
        return analysis.a[x], True
    best = 0
    best_budget = 0
    ball = system.enumerate_ball(max_length)
    for y in ball:
        for z in ball:
            if y.length + z.length > max_length:
                continue
            p = kl.product_canonical(y, z).get(x)
            if p is None:
                continue
            d = p.degree
            if d > best or (d == best and y.length + z.length < best_budget):
                best = d
                best_budget = y.length + z.length
    margin = max_length - 2 * system.longest_length
    exact = best_budget <= max_length - 2 and x.length <= margin
    return best, exact


def cell_orbit_diagnostic(system: CoxeterSystem, max_length: int) -> dict:
    """Compare certified two-sided cells against the nilpotent-orbit count.

    Report only; the truncation caveat is attached because cells on a ball
    are certain only away from the boundary.
    """
    from .orbits import orbit_poset

    if not system.affine:
        raise ValueError("the diagnostic applies to affine systems")
    kl = KLTable(system)
    partition = cell_partition(system, "twosided", max_length, kl)
    meets = []
    for cls in partition.classes:
        if any(system.in_min_coset(x) for x in cls):
            meets.append(cls)
    poset = orbit_poset(_orbit_algebra_for(system.label))
    finite_looking = []
    margin = partition.stability_margin or 0
    for cls in meets:
        if all(x.length < margin for x in cls):
            finite_looking.append([str(x) for x in cls])
    return {
        "type": system.label,
        "L": max_length,
        "margin": margin,
        "cells_meeting_coset": len(meets),
        "orbit_count": len(poset.nodes),
        "match": len(meets) == len(poset.nodes),
        "finite_looking_cells": finite_looking,
        "caveat": "cell membership certified only up to the stability margin; "
                  "counts on a truncated ball are diagnostic, not a proof",
    }


def _orbit_algebra_for(label: str) -> str:
    return {"A1": "sl2", "A2": "sl3", "B2": "so5", "G2": "g2"}[label]
