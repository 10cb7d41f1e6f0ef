"""The Hecke algebra of a Coxeter system and its canonical basis.

Conventions: the standard basis H_x multiplies by H_x H_y = H_{xy} when
lengths add, with quadratic relation H_s^2 = (v^-1 - v) H_s + 1.  The bar
involution fixes v -> v^-1 and H_x -> (H_{x^-1})^-1; the canonical basis
element attached to x is the unique bar-invariant element in
H_x + sum_{y<x} v Z[v] H_y.  We write h_{y,x} for its coefficients.

The table is computed by the usual recursion: multiply the canonical
element of a right-descent truncation by the canonical generator, then
subtract the lower canonical terms read off from constant coefficients.
Everything is memoised per system; coefficients are exact integers.

All computed coefficients are checked nonnegative: at these scales over
characteristic zero positivity is a theorem, so a violation is reported as
an internal consistency failure rather than a result.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from .coxeter import CoxElt, CoxeterSystem, IDENTITY
from .laurent import LaurentPoly, V, V_INV

Vec = dict[CoxElt, LaurentPoly]

_V_MINUS_VINV = V_INV - V  # coefficient in the quadratic relation


class InternalConsistencyError(RuntimeError):
    """A structural property that is a theorem failed in the computation."""


@dataclass
class KLVector:
    """A sparse Hecke-algebra element in a chosen basis."""

    basis_tag: str  # "standard" | "canonical"
    terms: Vec = field(default_factory=dict)

    def to_json(self) -> dict:
        return {str(x): p.to_json() for x, p in sorted(
            self.terms.items(), key=lambda kv: (kv[0].length, kv[0].word))}


def _add_term(vec: Vec, x: CoxElt, p: LaurentPoly) -> None:
    q = vec.get(x)
    q = p if q is None else q + p
    if q.is_zero():
        vec.pop(x, None)
    else:
        vec[x] = q


def standard_times_gen(sys: CoxeterSystem, vec: Vec, s: int,
                       side: str = "right") -> Vec:
    """Multiply a standard-basis vector by H_s on the given side."""
    out: Vec = {}
    for w, c in vec.items():
        ws = sys.multiply_gen(w, s) if side == "right" else sys.multiply_gen_left(s, w)
        _add_term(out, ws, c)
        if ws.length < w.length:
            _add_term(out, w, _V_MINUS_VINV * c)
    return out


def standard_times_canonical_gen(sys: CoxeterSystem, vec: Vec, s: int,
                                 side: str = "right") -> Vec:
    """Multiply a standard-basis vector by the canonical generator element."""
    out: Vec = {}
    for w, c in vec.items():
        ws = sys.multiply_gen(w, s) if side == "right" else sys.multiply_gen_left(s, w)
        _add_term(out, ws, c)
        shift = 1 if ws.length > w.length else -1
        _add_term(out, w, c.shift(shift))
    return out


def standard_times_element(sys: CoxeterSystem, vec: Vec, x: CoxElt) -> Vec:
    """Right-multiply a standard-basis vector by H_x, letter by letter."""
    for s in x.word:
        vec = standard_times_gen(sys, vec, s)
    return vec


def mult_standard(sys: CoxeterSystem, x: CoxElt, vec: KLVector) -> KLVector:
    """Right multiplication of a standard-basis KLVector by H_x."""
    if vec.basis_tag != "standard":
        raise ValueError("mult_standard expects a standard-basis vector")
    return KLVector("standard", standard_times_element(sys, dict(vec.terms), x))


def _heap_key(x: CoxElt) -> tuple:
    return (-x.length, x.word)


class KLTable:
    """Memoised canonical-basis table for one Coxeter system.

    The caches are append-only maps from immutable keys to fully built
    immutable values, and every computation is a pure function of earlier
    entries, so concurrent readers are safe and racing writers can only
    insert identical values: results are scheduling-independent.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._canonical: dict[CoxElt, Vec] = {}
        self._bar_std: dict[CoxElt, Vec] = {}

    def canonical(self, x: CoxElt) -> Vec:
        """The canonical basis element of x, expanded in the standard basis."""
        cached = self._canonical.get(x)
        if cached is not None:
            return cached
        # iterative by length so deep balls do not hit the recursion limit
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
            self._canonical[top] = self._canonical_from(trunc, top.word[-1], top)
        return self._canonical[x]

    def _canonical_from(self, trunc: CoxElt, s: int, x: CoxElt) -> Vec:
        sys = self.system
        prod = standard_times_canonical_gen(sys, self._canonical[trunc], s)
        # peel the lower canonical terms; corrections are the constant terms
        heap = [_heap_key(w) for w in prod]
        heapq.heapify(heap)
        queued = set(prod)
        while heap:
            neg_len, word = heapq.heappop(heap)
            y = CoxElt(word)
            c = prod.get(y)
            if c is None or c.is_zero():
                continue
            if y == x:
                if c != LaurentPoly.one():
                    raise InternalConsistencyError(
                        f"top coefficient of canonical({x}) is {c}")
                continue
            m = c.constant_term
            if m == 0:
                continue
            lower = self.canonical(y)
            for w, q in lower.items():
                _add_term(prod, w, q.scale(-m))
                if w not in queued:
                    queued.add(w)
                    heapq.heappush(heap, _heap_key(w))
        self._validate_canonical(x, prod)
        return prod

    def _validate_canonical(self, x: CoxElt, vec: Vec) -> None:
        for y, p in vec.items():
            if not p.is_nonnegative():
                raise InternalConsistencyError(
                    f"negative coefficient in h({y},{x}) = {p}")
            if y != x and not p.in_v_ztimes_v():
                raise InternalConsistencyError(
                    f"h({y},{x}) = {p} is not in vZ[v]")

    def h(self, y: CoxElt, x: CoxElt) -> LaurentPoly:
        return self.canonical(x).get(y, LaurentPoly.zero())

    def kl_basis(self, x: CoxElt) -> Vec:
        return dict(self.canonical(x))

    def mu(self, y: CoxElt, x: CoxElt) -> int:
        """Coefficient of v in h_{y,x}."""
        return self.h(y, x).coefficient(1)

    # -- products in the canonical basis ------------------------------------

    def expand_in_canonical(self, vec: Vec) -> Vec:
        """Expand a standard-basis vector in the canonical basis (peel)."""
        prod = dict(vec)
        coeffs: Vec = {}
        heap = [_heap_key(w) for w in prod]
        heapq.heapify(heap)
        queued = set(prod)
        while heap:
            neg_len, word = heapq.heappop(heap)
            z = CoxElt(word)
            c = prod.get(z)
            if c is None or c.is_zero():
                continue
            coeffs[z] = c
            for w, q in self.canonical(z).items():
                _add_term(prod, w, (q * c).scale(-1))
                if w not in queued:
                    queued.add(w)
                    heapq.heappush(heap, _heap_key(w))
        return coeffs

    def product_canonical(self, y: CoxElt, x: CoxElt) -> Vec:
        """Structure constants f with canonical(y) canonical(x) = sum f_z canonical(z)."""
        sys = self.system
        if x.length == 1:
            prod = standard_times_canonical_gen(sys, self.canonical(y), x.word[0])
        elif y.length == 1:
            prod = standard_times_canonical_gen(
                sys, self.canonical(x), y.word[0], side="left")
        else:
            left = self.canonical(y)
            prod = {}
            for b, hb in self.canonical(x).items():
                part = standard_times_element(sys, dict(left), b)
                for w, c in part.items():
                    _add_term(prod, w, c * hb)
        coeffs = self.expand_in_canonical(prod)
        for z, f in coeffs.items():
            if not f.is_nonnegative():
                raise InternalConsistencyError(
                    f"negative structure constant f({y},{x};{z}) = {f}")
        return coeffs

    # -- bar involution on standard vectors (used for verification) ---------

    def bar_standard(self, vec: Vec) -> Vec:
        """Apply the bar involution to a standard-basis vector."""
        sys = self.system
        out: Vec = {}
        for y, c in vec.items():
            by = self._bar_of_standard(y)
            cb = c.bar()
            for w, q in by.items():
                _add_term(out, w, q * cb)
        return out

    def _bar_of_standard(self, y: CoxElt) -> Vec:
        # (H_{y^-1})^-1 = product over a reduced word of y of
        # (H_s + (v - v^-1)), multiplied out left to right; built up one
        # letter at a time so prefixes are shared through the cache.
        cached = self._bar_std.get(y)
        if cached is not None:
            return cached
        if not y.word:
            vec: Vec = {IDENTITY: LaurentPoly.one()}
        else:
            prefix = self._bar_of_standard(self.system.element(y.word[:-1]))
            s = y.word[-1]
            vec = standard_times_gen(self.system, prefix, s)
            corr = V - V_INV
            for w, c in prefix.items():
                _add_term(vec, w, c * corr)
        self._bar_std[y] = vec
        return vec

    # -- persistence ---------------------------------------------------------

    FORMAT = "klcells-kl-table"
    FORMAT_VERSION = 1

    def save_json(self, path: str) -> None:
        payload = {
            "format": self.FORMAT,
            "version": self.FORMAT_VERSION,
            "label": self.system.label,
            "affine": self.system.affine,
            "entries": {
                str(x): {str(y): p.to_json() for y, p in sorted(
                    vec.items(), key=lambda kv: (kv[0].length, kv[0].word))}
                for x, vec in sorted(
                    self._canonical.items(),
                    key=lambda kv: (kv[0].length, kv[0].word))
            },
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)

    def load_json(self, path: str) -> None:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("format") != self.FORMAT:
            raise ValueError(f"not a {self.FORMAT} file: {path}")
        if payload.get("version") != self.FORMAT_VERSION:
            raise ValueError(f"unsupported table version in {path}")
        if (payload.get("label"), payload.get("affine")) != (
                self.system.label, self.system.affine):
            raise ValueError("cached table belongs to a different system")
        for xs, entry in payload["entries"].items():
            x = CoxElt.from_str(xs)
            self._canonical[x] = {
                CoxElt.from_str(ys): LaurentPoly.from_json(pj)
                for ys, pj in entry.items()
            }


def kl_basis(system: CoxeterSystem, x: CoxElt,
             table: KLTable | None = None) -> Vec:
    """Map y -> h_{y,x} for the canonical basis element of x."""
    return (table or KLTable(system)).kl_basis(x)


def mult_kl(system: CoxeterSystem, y: CoxElt, x: CoxElt,
            table: KLTable | None = None) -> Vec:
    """Map z -> f_{y,x,z}: structure constants in the canonical basis."""
    return (table or KLTable(system)).product_canonical(y, x)


def solve_canonical_by_bar_invariance(table: KLTable, x: CoxElt) -> Vec:
    """Independent oracle: find the canonical element by a direct linear solve.

    Sets up the bar-invariance equations for an element
    H_x + sum_{y<x} p_y H_y with unknown integer coefficients of the p_y
    (supported in degrees 1 .. l(x)-l(y)) and solves them by exact Gaussian
    elimination.  Shares no code path with the recursion in KLTable beyond
    standard-basis multiplication.
    """
    from fractions import Fraction

    sys = table.system
    below = [y for y in sys.enumerate_ball(x.length)
             if y != x and sys.bruhat_leq(y, x)]
    below.sort(key=lambda y: (y.length, y.word))
    # unknowns: coefficient of v^d in p_y for 1 <= d <= l(x)-l(y)
    unknowns: list[tuple[CoxElt, int]] = []
    for y in below:
        for d in range(1, x.length - y.length + 1):
            unknowns.append((y, d))
    index = {u: i for i, u in enumerate(unknowns)}

    bars = {y: table._bar_of_standard(y) for y in below + [x]}

    # bar(H_x + sum p_y H_y) - (H_x + sum p_y H_y) = 0
    # Equations are indexed by (standard basis element w, exponent e).
    rows: dict[tuple[CoxElt, int], dict[int, Fraction]] = {}
    rhs: dict[tuple[CoxElt, int], Fraction] = {}

    def bump(w: CoxElt, e: int, col: int | None, val: int) -> None:
        key = (w, e)
        if col is None:
            rhs[key] = rhs.get(key, Fraction(0)) + val
        else:
            row = rows.setdefault(key, {})
            row[col] = row.get(col, Fraction(0)) + val

    for w, q in bars[x].items():
        for i, c in enumerate(q.coeffs):
            bump(w, q.lo + i, None, c)
    bump(x, 0, None, -1)
    for y in below:
        for d in range(1, x.length - y.length + 1):
            col = index[(y, d)]
            for w, q in bars[y].items():
                qq = q.bar() if False else q  # bar(v^d) = v^-d factored below
                for i, c in enumerate(qq.coeffs):
                    bump(w, qq.lo + i - d, col, c)  # bar(p_y) has v^-d
            bump(y, d, col, -1)

    # dense exact solve
    keys = sorted(rows.keys() | rhs.keys(),
                  key=lambda k: (k[0].length, k[0].word, k[1]))
    n = len(unknowns)
    mat = [[rows.get(k, {}).get(j, Fraction(0)) for j in range(n)]
           + [-rhs.get(k, Fraction(0))] for k in keys]
    sol = _solve_exact(mat, n)
    out: Vec = {x: LaurentPoly.one()}
    for y in below:
        coeffs = [0] * (x.length - y.length + 1)
        for d in range(1, x.length - y.length + 1):
            val = sol[index[(y, d)]]
            if val.denominator != 1:
                raise InternalConsistencyError("non-integer bar-invariance solution")
            coeffs[d] = int(val)
        p = LaurentPoly(0, coeffs)
        if not p.is_zero():
            out[y] = p
    return out


def _solve_exact(mat: list[list["Fraction"]], n: int) -> list:
    """Solve an overdetermined consistent linear system by elimination."""
    from fractions import Fraction

    rows = [r[:] for r in mat if any(x != 0 for x in r)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            raise InternalConsistencyError("inconsistent bar-invariance system")
    sol = [Fraction(0)] * n
    for ri, col in pivots:
        sol[col] = rows[ri][n]
    return sol
