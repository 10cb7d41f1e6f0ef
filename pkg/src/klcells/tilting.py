"""Graded Hom spaces of quantum tilting modules and the rank-2 ideal data.

The graded dimension of Hom(T(x.0), T(y.0)) is the polynomial

    sum_z n_{z,x}(v) n_{z,y}(v)

over shortest coset representatives z, with n the antispherical canonical
basis coefficients.  Unit Homs (y = e) drive the rank-2 censuses; their
degrees label the generators of the tensor-ideal lattices.  The A2 lattice
is finite and fully determined; for B2 the family T(i*ell-3, 0) yields the
pairwise-incomparability certificates behind the infinite-lattice
statements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .antispherical import ASTable
from .coxeter import CoxElt, CoxeterSystem, IDENTITY
from .laurent import LaurentPoly
from .rootdata import QuantumParam, RootDatum


class CensusContradiction(RuntimeError):
    """A unit Hom in rank 2 failed to be a coefficient-1 monomial."""


@dataclass(frozen=True)
class GradedHom:
    x: CoxElt
    y: CoxElt
    poly: LaurentPoly


def graded_hom(table: ASTable, x: CoxElt, y: CoxElt) -> GradedHom:
    """Exact graded Hom polynomial; symmetric in (x, y)."""
    nx = table.canonical(x)
    ny = table.canonical(y)
    if len(ny) < len(nx):
        nx, ny = ny, nx
    total = LaurentPoly.zero()
    for z, p in nx.items():
        q = ny.get(z)
        if q is not None:
            total = total + p * q
    return GradedHom(x, y, total)


def unit_hom(table: ASTable, x: CoxElt) -> LaurentPoly:
    """Graded Hom from the unit: the coefficient n_{e,x}."""
    return table.canonical(x).get(IDENTITY, LaurentPoly.zero())


def census(system: CoxeterSystem, rd: RootDatum, ell: int, max_length: int,
           table: ASTable | None = None, strict: bool = True) -> dict:
    """All x in the coset ball with nonzero unit Hom, with weights and degrees.

    Every unit-Hom polynomial must be a monomial with coefficient one (the
    rank-2 Hom spaces from the unit are at most one-dimensional); anything
    else is reported as a contradiction.
    """
    QuantumParam(ell).validate(rd, strict=strict)
    table = table or ASTable(system)
    records = []
    contradictions = []
    for x in table.coset_ball(max_length):
        p = unit_hom(table, x)
        if p.is_zero():
            continue
        entry = {
            "word": str(x),
            "length": x.length,
            "weight": list(rd.w_to_weight(ell, x)),
            "degree": p.degree,
        }
        if not (p.is_monomial() and p.coefficient(p.degree) == 1):
            contradictions.append({**entry, "poly": p.to_json()})
        records.append(entry)
    return {
        "type": system.label,
        "ell": ell,
        "L": max_length,
        "complete_through_length": max_length,
        "entries": sorted(records, key=lambda r: (r["length"], r["word"])),
        "contradictions": contradictions,
    }


def nilpotence_bound_check(system: CoxeterSystem, max_length: int,
                           table: ASTable | None = None) -> dict:
    """Max graded-Hom degree over the ball against the radical bound.

    The radical of the tilting category is the positive-degree part, so its
    nilpotence order is one more than the largest Hom degree; that degree
    is at most twice the longest finite length.
    """
    table = table or ASTable(system)
    ball = table.coset_ball(max_length)
    bound = 2 * system.longest_length
    max_deg = 0
    max_pair = None
    violations = []
    for i, x in enumerate(ball):
        for y in ball[i:]:
            p = graded_hom(table, x, y).poly
            if p.is_zero():
                continue
            d = p.degree
            if d > max_deg:
                max_deg, max_pair = d, (str(x), str(y))
            if d > bound:
                violations.append({"x": str(x), "y": str(y), "deg": d})
            expected_const = 1 if x == y else 0
            if p.constant_term != expected_const:
                violations.append({"x": str(x), "y": str(y),
                                   "constant": p.constant_term})
    return {
        "type": system.label,
        "L": max_length,
        "margin": max_length,  # the Hom polynomials on the ball are exact
        "bound": bound,
        "nilpotency_order_bound": bound + 1,
        "max_deg": max_deg,
        "max_pair": max_pair,
        "violations": violations,
    }


# -- the finite lattice for type A2 -------------------------------------------


@dataclass(frozen=True)
class UnitGenerator:
    name: str
    word: str
    degree: int


@dataclass(frozen=True)
class GeneratorPoset:
    """Unit-morphism generators with the factorisation order.

    a <= b means the ideal generated by a is contained in the one generated
    by b; relations carry their provenance, either established factorisation
    data or machine-certified incomparability from vanishing degree-0 Homs.
    """

    generators: tuple[UnitGenerator, ...]
    relations: tuple[tuple[str, str, str], ...]  # (lower, upper, provenance)

    def leq(self, a: str, b: str) -> bool:
        if a == b:
            return True
        adj = {}
        for lo, hi, _ in self.relations:
            adj.setdefault(lo, set()).add(hi)
        reach = {a}
        stack = [a]
        while stack:
            u = stack.pop()
            for vtx in adj.get(u, ()):
                if vtx not in reach:
                    reach.add(vtx)
                    stack.append(vtx)
        return b in reach


A2_GENERATORS = (
    UnitGenerator("a1", "0", 1),
    UnitGenerator("a2L", "0-2-1-0", 2),
    UnitGenerator("a2R", "0-1-2-0", 2),
    UnitGenerator("a3", "0-1-2-1-0", 3),
)

# factorisation chain through the injective hull of the unit
A2_RELATIONS = (
    ("a3", "a2L", "paper-given"),
    ("a3", "a2R", "paper-given"),
    ("a2L", "a1", "paper-given"),
    ("a2R", "a1", "paper-given"),
)

A2_IDEAL_LABELS = {
    frozenset(): "0",
    frozenset({"a3"}): "J",
    frozenset({"a3", "a2L"}): "JL",
    frozenset({"a3", "a2R"}): "JR",
    frozenset({"a3", "a2L", "a2R"}): "I_(2,1)",
    frozenset({"a3", "a2L", "a2R", "a1"}): "N",
}

# the prime members are the maxima of the object-map fibres: the zero ideal,
# the maximal ideal with objects the projectives, and the negligibles; this
# matches the orbit <-> prime bijection for sl3
A2_PRIMES = ("0", "I_(2,1)", "N")
A2_PRIME_ORBITS = {"0": "(1,1,1)", "I_(2,1)": "(2,1)", "N": "(3)"}


def ideal_lattice_A2(system: CoxeterSystem | None = None,
                     rd: RootDatum | None = None,
                     ell: int | None = None) -> dict:
    """The six-element lattice of proper tensor ideals for type A2.

    The factorisation order on the four unit generators is fixed input;
    the down-closed generator sets enumerate the ideals.  When an affine
    system and a root datum are supplied, the incomparability of the two
    degree-2 generators is re-certified from vanishing degree-0 Homs.
    """
    poset = GeneratorPoset(A2_GENERATORS, A2_RELATIONS)
    names = [g.name for g in A2_GENERATORS]
    downsets = []
    for mask in range(1 << len(names)):
        s = frozenset(n for i, n in enumerate(names) if mask >> i & 1)
        if _down_closed(poset, names, s):
            downsets.append(s)
    downsets.sort(key=lambda s: (len(s), sorted(s)))

    provenance = [
        {"lower": lo, "upper": hi, "provenance": prov}
        for lo, hi, prov in A2_RELATIONS
    ]
    if system is not None and rd is not None and ell is not None:
        cert = certify_incomparable(system, rd, ell, "a2L", "a2R")
        provenance.append(cert)

    ideals = []
    for s in downsets:
        label = A2_IDEAL_LABELS[s]
        ideals.append({
            "label": label,
            "generators": sorted(s),
            "prime": label in A2_PRIMES,
            "orbit": A2_PRIME_ORBITS.get(label),
        })
    hasse = _downset_hasse(downsets)
    return {
        "generators": [{"name": g.name, "word": g.word, "degree": g.degree}
                       for g in A2_GENERATORS],
        "relations": provenance,
        "ideals": ideals,
        "count": len(ideals),
        "primes": [i["label"] for i in ideals if i["prime"]],
        "hasse": [(A2_IDEAL_LABELS[a], A2_IDEAL_LABELS[b]) for a, b in hasse],
        "intersection_JL_JR": A2_IDEAL_LABELS[
            frozenset({"a3", "a2L"}) & frozenset({"a3", "a2R"})],
        "dot": _lattice_dot(downsets),
        "factorization_dot": _factorization_dot(),
    }


def _down_closed(poset: GeneratorPoset, names: list[str], s: frozenset) -> bool:
    return all(a in s for b in s for a in names if poset.leq(a, b))


def _downset_hasse(downsets: list[frozenset]) -> list[tuple[frozenset, frozenset]]:
    edges = []
    for a in downsets:
        for b in downsets:
            if a < b and not any(a < m < b for m in downsets):
                edges.append((a, b))
    return edges


def _lattice_dot(downsets: list[frozenset]) -> str:
    lines = ["digraph ideal_lattice {"]
    for s in downsets:
        lines.append(f'  "{A2_IDEAL_LABELS[s]}";')
    for a, b in _downset_hasse(downsets):
        lines.append(f'  "{A2_IDEAL_LABELS[a]}" -> "{A2_IDEAL_LABELS[b]}";')
    lines.append("}")
    return "\n".join(lines)


def _factorization_dot() -> str:
    lines = ["digraph unit_generators {"]
    for g in A2_GENERATORS:
        lines.append(f'  "{g.name}" [label="{g.name} (deg {g.degree})"];')
    for lo, hi, prov in A2_RELATIONS:
        lines.append(f'  "{lo}" -> "{hi}" [label="{prov}"];')
    lines.append("}")
    return "\n".join(lines)


def certify_incomparable(system: CoxeterSystem, rd: RootDatum, ell: int,
                         gen_a: str, gen_b: str,
                         table: ASTable | None = None) -> dict:
    """Degree-0 Homs vanish between the two generators' targets."""
    table = table or ASTable(system)
    by_name = {g.name: g for g in A2_GENERATORS}
    xa = CoxElt.from_str(by_name[gen_a].word)
    xb = CoxElt.from_str(by_name[gen_b].word)
    const = graded_hom(table, xa, xb).poly.constant_term
    return {
        "lower": gen_a,
        "upper": gen_b,
        "provenance": "hom-certified-incomparable",
        "degree0_hom": const,
        "certified": const == 0,
    }


# -- B2: the infinite antichain certificates ----------------------------------


def b2_antichain_certificates(system: CoxeterSystem, rd: RootDatum, ell: int,
                              i_range: tuple[int, int],
                              table: ASTable | None = None) -> dict:
    """Certify the degree-3 family T(i*ell-3, 0) and its pairwise splits.

    For each i the unit Hom must be exactly v^3; for i != j the degree-0
    Hom between distinct members vanishes, which is the combinatorial
    ingredient for the incomparability of the generated ideals.
    """
    if system.label != "B2" or not system.affine or rd.label != "B2":
        raise ValueError("these certificates are specific to affine B2")
    QuantumParam(ell).validate(rd)
    lo, hi = i_range
    if lo < 3:
        raise ValueError("the family starts at i = 3")
    members = {}
    needed_length = 0
    for i in range(lo, hi + 1):
        lam = (i * ell - 3, 0)
        x = rd.weight_to_element(system, ell, lam)
        members[i] = (x, lam)
        needed_length = max(needed_length, x.length)
    table = table or ASTable(system)
    family = []
    for i, (x, lam) in sorted(members.items()):
        p = unit_hom(table, x)
        family.append({
            "i": i,
            "word": str(x),
            "weight": list(lam),
            "unit_hom": p.to_json(),
            "is_v_cubed": p == LaurentPoly.monomial(3),
        })
    pairs = []
    items = sorted(members.items())
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            i, (xi, _) = items[a]
            j, (xj, _) = items[b]
            const = graded_hom(table, xi, xj).poly.constant_term
            pairs.append({"i": i, "j": j, "degree0_hom": const})
    ok = (all(f["is_v_cubed"] for f in family)
          and all(p["degree0_hom"] == 0 for p in pairs))
    return {
        "type": "B2",
        "ell": ell,
        "i_range": [lo, hi],
        "verified_through_i": hi,
        "max_member_length": needed_length,
        "family": family,
        "pairwise_degree0": pairs,
        "certified": ok,
    }
