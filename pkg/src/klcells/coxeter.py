"""Finite and affine Weyl/Coxeter systems for the built-in rank <= 3 types.

Supported labels: A1, A2, B2, G2, A3, each optionally affinised by a
generator ``s_0`` attached through the highest short root.  Elements are
kept in ShortLex-minimal reduced form, so equality is syntactic and hashing
is cheap.  Internally each generator also acts as an exact affine map on the
weight space (rational arithmetic throughout); normal forms are produced by
greedily peeling the smallest left descent from that action, and lengths are
hyperplane separation counts.  The geometric realisation uses the paper
coordinates of the root data (shared with :mod:`klcells.rootdata`), with the
affine reflection placed at level 1.

Words are tuples of generator indices; 0 is the affine generator and
1..rank are the finite ones.  The identity is the empty word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def _vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class TypeGeometry:
    """Exact root-system data for one finite type, in fixed coordinates."""

    label: str
    dim: int
    simple_roots: tuple[Vector, ...]
    # coroots as covectors: coroot_i(lam) = dot(simple_corovectors[i], lam)
    simple_corovectors: tuple[Vector, ...]
    # all positive roots, each with its covector
    positive_roots: tuple[tuple[Vector, Vector], ...]
    rho: Vector
    theta: Vector            # highest short root
    theta_covector: Vector
    coxeter_number: int
    finite_coxeter_matrix: tuple[tuple[int, ...], ...]
    affine_bonds: tuple[int, ...]  # orders m(s_0, s_i), 0 meaning infinity

    @property
    def longest_length(self) -> int:
        return len(self.positive_roots)


def _a1() -> TypeGeometry:
    # weight coordinates: m stands for m*omega; alpha = 2*omega
    alpha = _vec(2)
    cov = _vec(1)
    return TypeGeometry(
        label="A1", dim=1,
        simple_roots=(alpha,), simple_corovectors=(cov,),
        positive_roots=((alpha, cov),),
        rho=_vec(1), theta=alpha, theta_covector=cov,
        coxeter_number=2,
        finite_coxeter_matrix=((1,),),
        affine_bonds=(0,),  # infinite dihedral
    )


def _a2() -> TypeGeometry:
    # fundamental-weight coordinates
    a1, a2 = _vec(2, -1), _vec(-1, 2)
    c1, c2 = _vec(1, 0), _vec(0, 1)
    theta = _vec(1, 1)
    return TypeGeometry(
        label="A2", dim=2,
        simple_roots=(a1, a2), simple_corovectors=(c1, c2),
        positive_roots=((a1, c1), (a2, c2), (theta, _vec(1, 1))),
        rho=_vec(1, 1), theta=theta, theta_covector=_vec(1, 1),
        coxeter_number=3,
        finite_coxeter_matrix=((1, 3), (3, 1)),
        affine_bonds=(3, 3),
    )


def _b2() -> TypeGeometry:
    # orthonormal basis (1,0), (0,1); simple roots (1,-1) long and (0,1) short
    a1, a2 = _vec(1, -1), _vec(0, 1)
    c1, c2 = _vec(1, -1), _vec(0, 2)
    theta = _vec(1, 0)  # highest short root e1
    return TypeGeometry(
        label="B2", dim=2,
        simple_roots=(a1, a2), simple_corovectors=(c1, c2),
        positive_roots=(
            (a1, c1), (a2, c2),
            (_vec(1, 0), _vec(2, 0)),   # a1 + a2, short
            (_vec(1, 1), _vec(1, 1)),   # a1 + 2 a2, long (highest root)
        ),
        rho=_vec(Fraction(3, 2), Fraction(1, 2)),
        theta=theta, theta_covector=_vec(2, 0),
        coxeter_number=4,
        finite_coxeter_matrix=((1, 4), (4, 1)),
        affine_bonds=(4, 2),
    )


def _g2() -> TypeGeometry:
    # three-dimensional embedding: coordinates sum to zero on the weight plane
    a1, a2 = _vec(1, -1, 0), _vec(-1, 2, -1)
    c1 = _vec(1, -1, 0)
    c2 = _vec(Fraction(-1, 3), Fraction(2, 3), Fraction(-1, 3))
    theta = _vec(1, 0, -1)  # highest short root, 2a1 + a2
    return TypeGeometry(
        label="G2", dim=3,
        simple_roots=(a1, a2), simple_corovectors=(c1, c2),
        positive_roots=(
            (a1, c1), (a2, c2),
            (_vec(0, 1, -1), _vec(0, 1, -1)),      # a1 + a2, short
            (theta, _vec(1, 0, -1)),               # 2a1 + a2, short
            (_vec(2, -1, -1), _vec(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))),  # 3a1 + a2
            (_vec(1, 1, -2), _vec(Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3))),    # 3a1 + 2a2, highest root
        ),
        rho=_vec(2, 1, -3), theta=theta, theta_covector=_vec(1, 0, -1),
        coxeter_number=6,
        finite_coxeter_matrix=((1, 6), (6, 1)),
        affine_bonds=(3, 2),
    )


def _a3() -> TypeGeometry:
    # fundamental-weight coordinates
    a1, a2, a3 = _vec(2, -1, 0), _vec(-1, 2, -1), _vec(0, -1, 2)
    c = (_vec(1, 0, 0), _vec(0, 1, 0), _vec(0, 0, 1))
    pos = (
        (a1, c[0]), (a2, c[1]), (a3, c[2]),
        (_vec(1, 1, -1), _vec(1, 1, 0)),   # a1 + a2
        (_vec(-1, 1, 1), _vec(0, 1, 1)),   # a2 + a3
        (_vec(1, 0, 1), _vec(1, 1, 1)),    # a1 + a2 + a3 = theta
    )
    return TypeGeometry(
        label="A3", dim=3,
        simple_roots=(a1, a2, a3), simple_corovectors=c,
        positive_roots=pos,
        rho=_vec(1, 1, 1), theta=_vec(1, 0, 1), theta_covector=_vec(1, 1, 1),
        coxeter_number=4,
        finite_coxeter_matrix=((1, 3, 2), (3, 1, 3), (2, 3, 1)),
        affine_bonds=(3, 2, 3),
    )


TYPE_GEOMETRY: dict[str, TypeGeometry] = {
    "A1": _a1(), "A2": _a2(), "B2": _b2(), "G2": _g2(), "A3": _a3(),
}

SUPPORTED_LABELS = tuple(sorted(TYPE_GEOMETRY))


class UnsupportedTypeError(ValueError):
    pass


# -- exact affine maps -----------------------------------------------------

AffineMap = tuple[Matrix, Vector]  # lam -> M lam + t


def _identity_map(dim: int) -> AffineMap:
    m = tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
    return m, tuple(Fraction(0) for _ in range(dim))


def _dot(cov: Vector, v: Vector) -> Fraction:
    return sum(a * b for a, b in zip(cov, v))


def _apply(f: AffineMap, v: Vector) -> Vector:
    m, t = f
    return tuple(_dot(row, v) + tc for row, tc in zip(m, t))


def _compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """f after g, i.e. lam -> f(g(lam))."""
    mf, tf = f
    mg, tg = g
    m = tuple(
        tuple(sum(mf[i][k] * mg[k][j] for k in range(len(mg))) for j in range(len(mg)))
        for i in range(len(mf))
    )
    t = tuple(_dot(row, tg) + tc for row, tc in zip(mf, tf))
    return m, t


def _reflection_map(root: Vector, cov: Vector, level: Fraction) -> AffineMap:
    """Affine reflection through the hyperplane cov(lam) = level."""
    dim = len(root)
    m = tuple(
        tuple(Fraction(int(i == j)) - root[i] * cov[j] for j in range(dim))
        for i in range(dim)
    )
    t = tuple(level * root[i] for i in range(dim))
    return m, t


@dataclass(frozen=True)
class CoxElt:
    """Group element in ShortLex-minimal reduced form."""

    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "-".join(str(i) for i in self.word)

    @staticmethod
    def from_str(s: str) -> CoxElt:
        if s == "":
            return CoxElt(())
        return CoxElt(tuple(int(t) for t in s.split("-")))


IDENTITY = CoxElt(())


class CoxeterSystem:
    """A built-in finite or affine Coxeter system.

    Generators are indexed 1..rank for the finite part, plus 0 when affine.
    Elements and their maps are immutable; the internal memo tables only
    ever gain entries whose values are determined by the key, so shared use
    from several threads stays consistent.
    """

    def __init__(self, label: str, affine: bool = False):
        if label not in TYPE_GEOMETRY:
            raise UnsupportedTypeError(
                f"unsupported type {label!r}; choose from {SUPPORTED_LABELS}")
        self.label = label
        self.affine = affine
        geom = TYPE_GEOMETRY[label]
        self.geometry = geom
        self.rank_finite = len(geom.simple_roots)
        self.finite_subset = tuple(range(1, self.rank_finite + 1))
        self.generators = ((0,) if affine else ()) + self.finite_subset
        # base point strictly inside the fundamental alcove at level 1
        h = geom.coxeter_number
        self._base = tuple(x / h for x in geom.rho)
        self._gen_maps: dict[int, AffineMap] = {}
        for i in self.finite_subset:
            self._gen_maps[i] = _reflection_map(
                geom.simple_roots[i - 1], geom.simple_corovectors[i - 1], Fraction(0))
        if affine:
            self._gen_maps[0] = _reflection_map(
                geom.theta, geom.theta_covector, Fraction(1))
        self._maps: dict[tuple[int, ...], AffineMap] = {(): _identity_map(geom.dim)}
        self._bruhat_memo: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}

    # -- plumbing ----------------------------------------------------------

    @property
    def coxeter_matrix(self) -> list[list[float]]:
        """Orders m_ij indexed by self.generators; math.inf for infinite."""
        geom = self.geometry
        gens = self.generators
        size = len(gens)
        m = [[1.0] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                i, j = gens[a], gens[b]
                if i == j:
                    continue
                if i == 0 or j == 0:
                    bond = geom.affine_bonds[max(i, j) - 1]
                    m[a][b] = math.inf if bond == 0 else float(bond)
                else:
                    m[a][b] = float(geom.finite_coxeter_matrix[i - 1][j - 1])
        return m

    def map_of(self, x: CoxElt) -> AffineMap:
        f = self._maps.get(x.word)
        if f is None:
            f = _identity_map(self.geometry.dim)
            for i in x.word:
                f = _compose(f, self._gen_maps[i])
            self._maps[x.word] = f
        return f

    def _length_of_map(self, f: AffineMap) -> int:
        q = _apply(f, self._base)
        total = 0
        for _, cov in self.geometry.positive_roots:
            val = _dot(cov, q)
            if self.affine:
                total += abs(math.floor(val))
            else:
                total += 1 if val < 0 else 0
        return total

    def _left_descents_of_map(self, f: AffineMap) -> list[int]:
        q = _apply(f, self._base)
        out = []
        if self.affine and _dot(self.geometry.theta_covector, q) > 1:
            out.append(0)
        for i in self.finite_subset:
            if _dot(self.geometry.simple_corovectors[i - 1], q) < 0:
                out.append(i)
        return out

    def _element_from_map(self, f: AffineMap) -> CoxElt:
        word: list[int] = []
        g = f
        while True:
            ds = self._left_descents_of_map(g)
            if not ds:
                break
            i = ds[0]
            word.append(i)
            g = _compose(self._gen_maps[i], g)
        x = CoxElt(tuple(word))
        self._maps.setdefault(x.word, f)
        return x

    # -- operations --------------------------------------------------------

    def element(self, word: Sequence[int]) -> CoxElt:
        """Normalise an arbitrary word to its ShortLex reduced form."""
        for i in word:
            if i not in self._gen_maps:
                raise ValueError(f"generator {i} not in system {self.label}"
                                 f"{' affine' if self.affine else ''}")
        f = _identity_map(self.geometry.dim)
        for i in word:
            f = _compose(f, self._gen_maps[i])
        return self._element_from_map(f)

    @property
    def identity(self) -> CoxElt:
        return IDENTITY

    def multiply(self, x: CoxElt, y: CoxElt) -> CoxElt:
        return self._element_from_map(_compose(self.map_of(x), self.map_of(y)))

    def multiply_gen(self, x: CoxElt, s: int) -> CoxElt:
        return self._element_from_map(_compose(self.map_of(x), self._gen_maps[s]))

    def length(self, x: CoxElt) -> int:
        return len(x.word)

    def inverse(self, x: CoxElt) -> CoxElt:
        return self.element(tuple(reversed(x.word)))

    def descents(self, x: CoxElt, side: str = "right") -> set[int]:
        if side == "left":
            return set(self._left_descents_of_map(self.map_of(x)))
        if side == "right":
            return set(self._left_descents_of_map(self.map_of(self.inverse(x))))
        raise ValueError("side must be 'left' or 'right'")

    def reduced_word(self, x: CoxElt) -> tuple[int, ...]:
        return x.word

    def bruhat_leq(self, y: CoxElt, x: CoxElt) -> bool:
        """Bruhat order, by the memoised lifting recursion on a left descent."""
        if len(y.word) > len(x.word):
            return False
        if y == x or not y.word:
            return True
        if not x.word:
            return False
        key = (y.word, x.word)
        memo = self._bruhat_memo
        cached = memo.get(key)
        if cached is not None:
            return cached
        s = x.word[0]  # smallest left descent: first letter of the normal form
        sx = self.element(x.word[1:])
        sy = self.multiply_gen_left(s, y)
        if len(sy.word) < len(y.word):
            result = self.bruhat_leq(sy, sx)
        else:
            result = self.bruhat_leq(y, sx)
        memo[key] = result
        return result

    def multiply_gen_left(self, s: int, x: CoxElt) -> CoxElt:
        return self._element_from_map(_compose(self._gen_maps[s], self.map_of(x)))

    def enumerate_ball(self, max_length: int) -> list[CoxElt]:
        """All elements of length <= max_length, sorted by (length, word)."""
        return self._bfs(max_length, coset_only=False)

    def min_coset_reps(self, max_length: int) -> list[CoxElt]:
        """Elements with no left descent in the finite subset (length-bounded).

        For affine systems these are the shortest representatives of the
        cosets (finite group)\\(full group).
        """
        return self._bfs(max_length, coset_only=True)

    def _bfs(self, max_length: int, coset_only: bool) -> list[CoxElt]:
        seen = {IDENTITY}
        frontier = [IDENTITY]
        out = [IDENTITY]
        for _ in range(max_length):
            nxt = []
            for x in frontier:
                fx = self.map_of(x)
                for s in self.generators:
                    f = _compose(fx, self._gen_maps[s])
                    if self._length_of_map(f) != len(x.word) + 1:
                        continue
                    if coset_only:
                        q = _apply(f, self._base)
                        if any(_dot(self.geometry.simple_corovectors[i - 1], q) < 0
                               for i in self.finite_subset):
                            continue
                    z = self._element_from_map(f)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
            if not frontier:
                break
        out.extend(sorted(seen - {IDENTITY}, key=lambda e: (len(e.word), e.word)))
        return out

    def in_min_coset(self, x: CoxElt) -> bool:
        """True iff x has no left descent in the finite subset."""
        return not any(i in self.finite_subset
                       for i in self._left_descents_of_map(self.map_of(x)))

    def is_min_double_coset(self, x: CoxElt) -> bool:
        """True iff x also has no right descent in the finite subset."""
        return self.in_min_coset(x) and not (
            self.descents(x, "right") & set(self.finite_subset))

    def iter_finite_group(self) -> Iterator[CoxElt]:
        if self.affine:
            raise ValueError("finite group iteration requires a finite system")
        yield from self.enumerate_ball(len(self.geometry.positive_roots))

    @property
    def longest_length(self) -> int:
        """Length of the longest element of the finite part."""
        return self.geometry.longest_length


def build_system(label: str, affine: bool = False) -> CoxeterSystem:
    return CoxeterSystem(label, affine)
