"""Antispherical and spherical modules over the Hecke algebra.

Both are induced from a one-dimensional module over the finite-part
subalgebra: the generator H_s acts there by -v (antispherical) or by v^-1
(spherical).  The standard bases N_x / M_x are indexed by the shortest
coset representatives; canonical bases are computed by the same
truncate-multiply-peel recursion as in :mod:`klcells.hecke`, entirely
inside the coset ball, so every coefficient n_{y,x} with x in the ball is
exact.  The conservative boundary policy still tags elements of length
greater than L - l(w0) as provisional; certified consumers use the
untainted range only.

The inverse family m^{z,x} of the spherical canonical basis is obtained by
an exact triangular solve of

    sum_z (-1)^{l(z)+l(x)} m^{z,x} m_{z,y} = delta_{x,y},

row by row in increasing length of y; each row only needs already-known
data, so no row of the solve is ever underdetermined on a ball.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .coxeter import CoxElt, CoxeterSystem, IDENTITY
from .hecke import (InternalConsistencyError, KLTable, Vec, _add_term,
                    _heap_key)
from .laurent import LaurentPoly

_V_PLUS_VINV = LaurentPoly(-1, [1, 0, 1])


@dataclass
class ASVector:
    """Sparse module element; keys are shortest coset representatives."""

    basis_tag: str  # "standard" | "canonical" | "spherical-standard" | ...
    terms: Vec


class ASTable:
    """Canonical basis of the antispherical (or spherical) module.

    Same sharing contract as the Hecke table: append-only caches of
    immutable values keyed by normal forms, scheduling-independent results.
    """

    def __init__(self, system: CoxeterSystem, spherical: bool = False,
                 cross_validate: bool = False, kl_table: KLTable | None = None):
        if not system.affine:
            raise ValueError("the parabolic modules here require an affine system")
        self.system = system
        self.spherical = spherical
        self.cross_validate = cross_validate
        self._kl_table = kl_table
        self._canonical: dict[CoxElt, Vec] = {}

    # -- standard-basis action ----------------------------------------------

    def times_canonical_gen(self, vec: Vec, s: int) -> Vec:
        """Right action of the canonical generator element on the module."""
        sys = self.system
        out: Vec = {}
        for y, c in vec.items():
            ys = sys.multiply_gen(y, s)
            if not sys.in_min_coset(ys):
                if self.spherical:
                    _add_term(out, y, _V_PLUS_VINV * c)
                # antispherical: the two contributions cancel exactly
                continue
            _add_term(out, ys, c)
            shift = 1 if ys.length > y.length else -1
            _add_term(out, y, c.shift(shift))
        return out

    def times_gen(self, vec: Vec, s: int) -> Vec:
        """Right action of the standard generator H_s on the module."""
        sys = self.system
        sign = LaurentPoly.monomial(-1) if self.spherical else LaurentPoly.monomial(1, -1)
        quad = LaurentPoly(-1, [1]) - LaurentPoly(1, [1])
        out: Vec = {}
        for y, c in vec.items():
            ys = sys.multiply_gen(y, s)
            if not sys.in_min_coset(ys):
                _add_term(out, y, sign * c)
            elif ys.length > y.length:
                _add_term(out, ys, c)
            else:
                _add_term(out, ys, c)
                _add_term(out, y, quad * c)
        return out

    # -- canonical basis ------------------------------------------------------

    def canonical(self, x: CoxElt) -> Vec:
        cached = self._canonical.get(x)
        if cached is not None:
            return cached
        if not self.system.in_min_coset(x):
            raise ValueError(f"{x} is not a shortest coset representative")
        stack = [x]
        while stack:
            top = stack[-1]
            if top in self._canonical:
                stack.pop()
                continue
            if not top.word:
                self._canonical[top] = {IDENTITY: LaurentPoly.one()}
                stack.pop()
                continue
            trunc = self.system.element(top.word[:-1])
            if trunc not in self._canonical:
                stack.append(trunc)
                continue
            stack.pop()
            vec = self._canonical_from(trunc, top.word[-1], top)
            if self.cross_validate and not self.spherical:
                expected = canonical_via_folding(self._require_kl(), top)
                if expected != vec:
                    raise InternalConsistencyError(
                        f"recursion and folding disagree at {top}")
            self._canonical[top] = vec
        return self._canonical[x]

    def _require_kl(self) -> KLTable:
        if self._kl_table is None:
            self._kl_table = KLTable(self.system)
        return self._kl_table

    def _canonical_from(self, trunc: CoxElt, s: int, x: CoxElt) -> Vec:
        prod = self.times_canonical_gen(self._canonical[trunc], s)
        heap = [_heap_key(w) for w in prod]
        heapq.heapify(heap)
        queued = set(prod)
        while heap:
            _, word = heapq.heappop(heap)
            y = CoxElt(word)
            c = prod.get(y)
            if c is None or c.is_zero():
                continue
            if y == x:
                if c != LaurentPoly.one():
                    raise InternalConsistencyError(
                        f"top coefficient of parabolic canonical({x}) is {c}")
                continue
            m = c.constant_term
            if m == 0:
                continue
            for w, q in self.canonical(y).items():
                _add_term(prod, w, q.scale(-m))
                if w not in queued:
                    queued.add(w)
                    heapq.heappush(heap, _heap_key(w))
        for y, p in prod.items():
            if y != x and not p.in_v_ztimes_v():
                raise InternalConsistencyError(
                    f"parabolic coefficient ({y},{x}) = {p} not in vZ[v]")
            if not p.is_nonnegative():
                raise InternalConsistencyError(
                    f"negative parabolic coefficient ({y},{x}) = {p}")
        return prod

    def poly(self, y: CoxElt, x: CoxElt) -> LaurentPoly:
        return self.canonical(x).get(y, LaurentPoly.zero())

    def coset_ball(self, max_length: int) -> list[CoxElt]:
        return self.system.min_coset_reps(max_length)

    def certified(self, max_length: int) -> list[CoxElt]:
        """Untainted elements for a ball of the given length.

        Conservative boundary policy: anything of length greater than
        L - l(w0) is marked provisional even though the recursion itself
        never looks upward.
        """
        margin = max_length - self.system.longest_length
        return [x for x in self.coset_ball(max_length) if x.length <= margin]


def asph_mult_gen(system: CoxeterSystem, vec: ASVector, s: int) -> ASVector:
    """Right action of the canonical generator element on a standard vector."""
    spherical = vec.basis_tag.startswith("spherical")
    table = ASTable(system, spherical=spherical)
    return ASVector(vec.basis_tag, table.times_canonical_gen(vec.terms, s))


def asph_canonical(system: CoxeterSystem, x: CoxElt,
                   table: ASTable | None = None) -> Vec:
    """Map y -> n_{y,x} for the antispherical canonical basis element."""
    return dict((table or ASTable(system)).canonical(x))


def spherical_canonical(system: CoxeterSystem, x: CoxElt,
                        table: ASTable | None = None) -> Vec:
    """Map y -> m_{y,x} for the spherical canonical basis element."""
    if table is None:
        table = ASTable(system, spherical=True)
    return dict(table.canonical(x))


def _finite_part_elements(sys: CoxeterSystem) -> list[CoxElt]:
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for s in sys.finite_subset:
                z = sys.multiply_gen(x, s)
                if z.length == x.length + 1 and z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return sorted(seen, key=lambda e: (e.length, e.word))


def _split_coset(sys: CoxeterSystem, z: CoxElt) -> tuple[int, CoxElt]:
    """Write z = u w with u in the finite part and w a shortest rep."""
    length_u = 0
    w = z
    while True:
        ds = [i for i in sys.descents(w, "left") if i in sys.finite_subset]
        if not ds:
            return length_u, w
        w = sys.multiply_gen_left(ds[0], w)
        length_u += 1


def canonical_via_folding(kl_table: KLTable, x: CoxElt) -> Vec:
    """Antispherical canonical element through the full Hecke table.

    Computes n_{w,x} = sum over the finite part of (-v)^(l(u)) h_{uw,x};
    cross-check for the in-module recursion.
    """
    sys = kl_table.system
    out: Vec = {}
    for z, h in kl_table.canonical(x).items():
        lu, w = _split_coset(sys, z)
        _add_term(out, w, h * LaurentPoly.monomial(lu, (-1) ** lu))
    return {w: p for w, p in out.items() if not p.is_zero()}


# -- spherical inversion ------------------------------------------------------


@dataclass
class SphericalInverse:
    """Exact inverse family m^{z,x} over a coset ball."""

    system: CoxeterSystem
    max_length: int
    elements: list[CoxElt]
    table: dict[tuple[CoxElt, CoxElt], LaurentPoly]  # (z, x) -> m^{z,x}

    def value(self, z: CoxElt, x: CoxElt) -> LaurentPoly:
        return self.table.get((z, x), LaurentPoly.zero())

    def orthogonality_residual(self, m_table: ASTable, x: CoxElt,
                               y: CoxElt) -> LaurentPoly:
        """sum_z (-1)^(l(z)+l(x)) m^{z,x} m_{z,y} minus delta_{x,y}."""
        total = LaurentPoly.zero()
        m_y = m_table.canonical(y)
        for z in self.elements:
            a = self.table.get((z, x))
            if a is None:
                continue
            b = m_y.get(z)
            if b is None:
                continue
            total = total + (a * b).scale((-1) ** (z.length + x.length))
        if x == y:
            total = total - LaurentPoly.one()
        return total


def spherical_inverse(system: CoxeterSystem, max_length: int,
                      m_table: ASTable | None = None) -> SphericalInverse:
    """Solve the triangular orthogonality system on a coset ball."""
    if m_table is None:
        m_table = ASTable(system, spherical=True)
    elements = m_table.coset_ball(max_length)
    table: dict[tuple[CoxElt, CoxElt], LaurentPoly] = {}
    for x in elements:
        table[(x, x)] = LaurentPoly.one()
        support = [x]
        for y in elements:
            if y == x or y.length < x.length:
                continue
            m_y = m_table.canonical(y)
            acc = LaurentPoly.zero()
            for z in support:
                b = m_y.get(z)
                if b is None:
                    continue
                acc = acc + (table[(z, x)] * b).scale((-1) ** (z.length + y.length))
            if not acc.is_zero():
                table[(y, x)] = -acc
                support.append(y)
    return SphericalInverse(system, max_length, elements, table)


# -- degree bound report ------------------------------------------------------


def bound_check(system: CoxeterSystem, max_length: int,
                n_table: ASTable | None = None,
                include_inverse: bool = True) -> dict:
    """Scan all n_{y,x} on a coset ball against the degree bound l(w0)."""
    if n_table is None:
        n_table = ASTable(system)
    bound = system.longest_length
    margin = max_length - bound
    ball = n_table.coset_ball(max_length)
    max_deg_ball = 0
    max_deg = 0
    violations: list[dict] = []
    for x in ball:
        for y, p in n_table.canonical(x).items():
            if p.is_zero():
                continue
            d = p.degree
            max_deg_ball = max(max_deg_ball, d)
            if x.length <= margin:
                max_deg = max(max_deg, d)
                if d > bound:
                    violations.append({"y": str(y), "x": str(x), "deg": d})
    report = {
        "type": system.label,
        "L": max_length,
        "bound": bound,
        "margin": margin,
        "max_deg": max_deg,
        "max_deg_ball": max_deg_ball,
        "violations": sorted(violations, key=lambda v: (v["x"], v["y"])),
    }
    if include_inverse:
        m_table = ASTable(system, spherical=True)
        inv = spherical_inverse(system, max_length, m_table)
        max_inv = 0
        for (z, x), p in inv.table.items():
            if not p.is_zero() and x.length <= margin and z.length <= margin:
                max_inv = max(max_inv, p.degree)
        report["max_deg_m_inv"] = max_inv
    return report
