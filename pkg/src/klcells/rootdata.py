"""Concrete root data, the shifted affine action at a root of unity, and
the dictionary between shortest coset representatives and dominant weights.

Coordinates are fixed once per type (the same tables back the Coxeter
systems): A1 and A2/A3 use fundamental-weight coordinates, B2 the basis
(1,0),(0,1) with simple roots (1,-1),(0,1), and G2 the three-dimensional
embedding with simple roots (1,-1,0),(-1,2,-1).  All pairings are exact
rationals; weights of the lattice itself are integer vectors.

The shifted action at an odd integer ell places the affine reflection on
the hyperplane <lam + rho, theta^vee> = ell for theta the highest short
root.  Lower closures of alcoves are the half-open regions

    (n_alpha - 1) ell <= <lam + rho, alpha^vee> < n_alpha ell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .coxeter import (CoxElt, CoxeterSystem, TYPE_GEOMETRY, TypeGeometry,
                      UnsupportedTypeError, _dot)

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class QuantumParam:
    """Order of the root of unity; validated against the root datum."""

    ell: int

    def validate(self, rd: "RootDatum", strict: bool = True) -> None:
        problems = []
        if self.ell % 2 == 0:
            problems.append("ell must be odd")
        if self.ell <= rd.coxeter_number:
            problems.append(
                f"ell must exceed the Coxeter number {rd.coxeter_number}")
        if rd.label == "G2" and self.ell % 3 == 0:
            problems.append("ell must not be divisible by 3 in type G2")
        if problems and strict:
            raise ValueError("; ".join(problems))


@dataclass(frozen=True)
class AlcoveAddress:
    """Integers n_alpha indexed by positive roots, plus wall flags."""

    entries: tuple[int, ...]       # aligned with RootDatum positive roots
    on_lower_wall: tuple[bool, ...]

    def is_fundamental(self) -> bool:
        return all(n == 1 for n in self.entries)


class RootDatum:
    """Root-system constants plus the ell-shifted affine action."""

    def __init__(self, label: str):
        if label not in TYPE_GEOMETRY:
            raise UnsupportedTypeError(f"no root datum for {label!r}")
        geom: TypeGeometry = TYPE_GEOMETRY[label]
        self.label = label
        self.geometry = geom
        self.dim = geom.dim
        self.rank = len(geom.simple_roots)
        self.simple_roots = geom.simple_roots
        self.simple_corovectors = geom.simple_corovectors
        self.positive_roots = geom.positive_roots
        self.rho = geom.rho
        self.theta = geom.theta
        self.theta_covector = geom.theta_covector
        self.coxeter_number = geom.coxeter_number
        self.longest_length = geom.longest_length

    # -- helpers -------------------------------------------------------------

    def fundamental_weight_coordinates(self, lam: IntVec) -> IntVec:
        """Pairings with the simple coroots (for A-types this is the identity)."""
        return tuple(int(_dot(c, tuple(Fraction(x) for x in lam)))
                     for c in self.simple_corovectors)

    def is_dominant(self, lam: IntVec) -> bool:
        v = tuple(Fraction(x) for x in lam)
        return all(_dot(c, v) >= 0 for c in self.simple_corovectors)

    def _shifted(self, lam: IntVec) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) + r for x, r in zip(lam, self.rho))

    @staticmethod
    def _unshift(v: tuple[Fraction, ...], rho) -> IntVec:
        out = []
        for x, r in zip(v, rho):
            y = x - r
            if y.denominator != 1:
                raise ValueError("shifted action left the weight lattice")
            out.append(int(y))
        return tuple(out)

    # -- the shifted action ----------------------------------------------------

    def dot_action_gen(self, ell: int, s: int, lam: IntVec) -> IntVec:
        """Shifted action of one generator (0 is the affine one)."""
        mu = self._shifted(lam)
        if s == 0:
            level = _dot(self.theta_covector, mu) - ell
            mu = tuple(x - level * t for x, t in zip(mu, self.theta))
        else:
            alpha = self.simple_roots[s - 1]
            level = _dot(self.simple_corovectors[s - 1], mu)
            mu = tuple(x - level * a for x, a in zip(mu, alpha))
        return self._unshift(mu, self.rho)

    def dot_action(self, ell: int, w: CoxElt, lam: IntVec) -> IntVec:
        """w . lam, applying the word right to left (an action)."""
        out = lam
        for s in reversed(w.word):
            out = self.dot_action_gen(ell, s, out)
        return out

    def w_to_weight(self, ell: int, x: CoxElt) -> IntVec:
        return self.dot_action(ell, x, tuple(0 for _ in range(self.dim)))

    # -- alcove addressing -------------------------------------------------------

    def alcove_address(self, ell: int, lam: IntVec) -> AlcoveAddress:
        mu = self._shifted(lam)
        ns = []
        walls = []
        for _, cov in self.positive_roots:
            val = _dot(cov, mu)
            q = val / ell
            n = floor(q) + 1
            ns.append(int(n))
            walls.append(q == floor(q))
        return AlcoveAddress(tuple(ns), tuple(walls))

    def weight_to_element(self, sys: CoxeterSystem, ell: int,
                          lam: IntVec) -> CoxElt:
        """The shortest representative whose alcove's lower closure holds lam.

        Walks the (infinitesimally raised) point back into the fundamental
        alcove; the perturbation lam + rho + eps*rho realises the half-open
        lower-closure convention exactly, as first-order lexicographic pairs.
        """
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        if not sys.affine or sys.label != self.label:
            raise ValueError("need the matching affine system")
        u = self._shifted(lam)
        du = self.rho
        word: list[int] = []
        while True:
            moved = False
            # affine wall: need <u, theta_cov> < ell (ties resolved by du)
            val = _dot(self.theta_covector, u)
            dval = _dot(self.theta_covector, du)
            if val > ell or (val == ell and dval >= 0):
                level = val - ell
                u = tuple(x - level * t for x, t in zip(u, self.theta))
                du = tuple(x - dval * t for x, t in zip(du, self.theta))
                word.append(0)
                moved = True
            else:
                for i in range(1, self.rank + 1):
                    cov = self.simple_corovectors[i - 1]
                    val = _dot(cov, u)
                    dval = _dot(cov, du)
                    if val < 0 or (val == 0 and dval < 0):
                        alpha = self.simple_roots[i - 1]
                        u = tuple(x - val * a for x, a in zip(u, alpha))
                        du = tuple(x - dval * a for x, a in zip(du, alpha))
                        word.append(i)
                        moved = True
                        break
            if not moved:
                break
        return sys.element(tuple(word))

    def affine_length_geometric(self, ell: int, sys: CoxeterSystem,
                                x: CoxElt) -> int:
        """Word length recomputed as a hyperplane separation count.

        Counts, for every positive root, the multiples of ell strictly
        between <rho, cov> and <x.0 + rho, cov>; independent of the word
        machinery, so it cross-checks the normal forms.
        """
        lam = self.w_to_weight(ell, x)
        mu = self._shifted(lam)
        total = 0
        for _, cov in self.positive_roots:
            a = _dot(cov, self.rho) / ell
            b = _dot(cov, mu) / ell
            lo, hi = min(a, b), max(a, b)
            total += floor(hi) - floor(lo)
        return total


def build_root_datum(label: str) -> RootDatum:
    return RootDatum(label)
