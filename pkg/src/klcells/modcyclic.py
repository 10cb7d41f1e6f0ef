"""Modular representation combinatorics of k[x]/x^(p^n) Hopf algebras.

A one-dimensional formal group law F over F_p induces a comultiplication
x -> F(x (x) 1, 1 (x) x) on k[x]/x^(p^n); the multiplicative law u+v+uv
realises the cyclic group of order p^n, the additive law u+v the Frobenius
kernel.  Indecomposables are the single Jordan blocks J_1 .. J_{p^n};
tensor products are decomposed by brute force, reading block sizes off the
exact F_p ranks of powers of the comultiplied nilpotent.

The chain of proper thick tensor ideals, the object map of the ideal chain
generated by the socle monomorphisms, and the Lucas primality pattern are
derived from these tables; everything is exhaustively verifiable at small
(p, n).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

JordanType = tuple[int, ...]  # weakly decreasing block sizes

_BUILTIN_LAWS = ("multiplicative", "additive")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FGLAlgebra:
    """k[x]/x^(p^n) with the Hopf structure of a formal group law."""

    def __init__(self, p: int, n: int, fgl="multiplicative"):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError("level n must be positive")
        self.p = p
        self.n = n
        self.dim = p ** n
        if isinstance(fgl, str):
            if fgl not in _BUILTIN_LAWS:
                raise ValueError(f"unknown formal group law {fgl!r}")
            self.fgl_name = fgl
            if fgl == "multiplicative":
                self.terms = {(1, 0): 1, (0, 1): 1, (1, 1): 1}
            else:
                self.terms = {(1, 0): 1, (0, 1): 1}
        else:
            self.fgl_name = "custom"
            self.terms = {}
            for key, c in dict(fgl).items():
                # keys are (i, j) pairs, or "i,j" strings from JSON payloads
                if isinstance(key, str):
                    i, j = (int(t) for t in key.split(","))
                else:
                    i, j = int(key[0]), int(key[1])
                c = int(c) % p
                if c and i + j <= self.dim:
                    self.terms[(i, j)] = c
            self._validate_custom_law()
        self._table: dict[tuple[int, int], JordanType] = {}

    # -- formal group law validation ----------------------------------------

    def _validate_custom_law(self) -> None:
        p, deg = self.p, self.dim
        t = self.terms
        if t.get((1, 0)) != 1 or any(i != 1 for (i, j) in t if j == 0):
            raise ValueError("a formal group law needs F(u, 0) = u")
        if t.get((0, 1)) != 1 or any(j != 1 for (i, j) in t if i == 0):
            raise ValueError("a formal group law needs F(0, v) = v")
        for (i, j), c in t.items():
            if t.get((j, i), 0) != c:
                raise ValueError("law must be symmetric to the working degree")
        if not self._associative_to(deg):
            raise ValueError(
                f"law is not associative modulo total degree {deg + 1}")

    def _associative_to(self, deg: int) -> bool:
        # compare F(F(u,v),w) with F(u,F(v,w)) in F_p[u,v,w] / (degree > deg)
        p = self.p

        def mul(a: dict, b: dict) -> dict:
            out: dict = {}
            for (i1, j1, k1), c1 in a.items():
                for (i2, j2, k2), c2 in b.items():
                    key = (i1 + i2, j1 + j2, k1 + k2)
                    if sum(key) > deg:
                        continue
                    out[key] = (out.get(key, 0) + c1 * c2) % p
            return {k: c for k, c in out.items() if c}

        def subst(outer: dict, first: dict, second: dict) -> dict:
            # evaluate F(first, second) for trivariate truncated series
            powers_a: list[dict] = [{(0, 0, 0): 1}]
            powers_b: list[dict] = [{(0, 0, 0): 1}]
            out: dict = {}
            for (i, j), c in outer.items():
                while len(powers_a) <= i:
                    powers_a.append(mul(powers_a[-1], first))
                while len(powers_b) <= j:
                    powers_b.append(mul(powers_b[-1], second))
                for key, cc in mul(powers_a[i], powers_b[j]).items():
                    out[key] = (out.get(key, 0) + c * cc) % p
            return {k: c for k, c in out.items() if c}

        u = {(1, 0, 0): 1}
        v = {(0, 1, 0): 1}
        w = {(0, 0, 1): 1}
        f_uv = subst(self.terms, u, v)
        f_vw = subst(self.terms, v, w)
        return subst(self.terms, f_uv, w) == subst(self.terms, u, f_vw)

    # -- the comultiplied nilpotent and its Jordan type ----------------------

    def _dtype(self):
        return np.uint8 if self.p <= 13 else np.int64

    def _apply_operator(self, a: int, b: int, vecs: np.ndarray) -> np.ndarray:
        """Apply x = F(x(x)1, 1(x)x) to columns laid out as (a, b, r)."""
        r = vecs.shape[2]
        out = np.zeros((a, b, r), dtype=np.int32)
        for (i, j), c in self.terms.items():
            if i < a and j < b:
                out[i:, j:, :] += int(c) * vecs[: a - i, : b - j, :].astype(np.int32)
        return (out % self.p).astype(self._dtype())

    def tensor_decompose(self, a: int, b: int) -> JordanType:
        """Jordan type of J_a (x) J_b, from ranks of powers of x."""
        if not (1 <= a <= self.dim and 1 <= b <= self.dim):
            raise ValueError(f"block sizes must lie in 1..{self.dim}")
        key = (min(a, b), max(a, b))
        cached = self._table.get(key)
        if cached is not None:
            return cached
        a_, b_ = key
        d = a_ * b_
        vecs = np.eye(d, dtype=self._dtype()).reshape(a_, b_, d)
        ranks = [d]
        while ranks[-1] > 0:
            image = self._apply_operator(a_, b_, vecs)
            basis = _column_basis(image.reshape(d, -1), self.p)
            ranks.append(basis.shape[1])
            vecs = basis.reshape(a_, b_, basis.shape[1])
        jt = _type_from_ranks(ranks)
        if sum(jt) != a * b:
            raise AssertionError("rank bookkeeping lost dimensions")
        self._table[key] = jt
        return jt

    def decomposition_table(self) -> dict[tuple[int, int], JordanType]:
        """All J_a (x) J_b for 1 <= a <= b <= p^n."""
        for a in range(1, self.dim + 1):
            for b in range(a, self.dim + 1):
                self.tensor_decompose(a, b)
        return dict(self._table)

    # -- restriction along the Frobenius-power inclusion ----------------------

    def restriction_type(self, k: int, m: int) -> JordanType:
        """Jordan type of x^(p^m) acting on a single k-dimensional block.

        The operator is a pure shift by q = p^m, so the chains are the
        residue classes of the basis exponents mod q.
        """
        if not 1 <= k <= self.dim:
            raise ValueError(f"block size must lie in 1..{self.dim}")
        if not 0 <= m < self.n:
            raise ValueError("restriction level must satisfy 0 <= m < n")
        q = self.p ** m
        sizes = [-(-(k - r) // q) for r in range(min(q, k))]
        return tuple(sorted(sizes, reverse=True))

    def negligible_after_restriction(self, k: int, m: int) -> bool:
        return all(s % self.p == 0 for s in self.restriction_type(k, m))

    # -- thick ideals ----------------------------------------------------------

    def thick_closure(self, seed) -> frozenset:
        """Least set of block sizes closed under tensoring with everything."""
        closure = set()
        frontier = set(int(s) for s in seed)
        while frontier:
            s = frontier.pop()
            if s in closure:
                continue
            closure.add(s)
            for i in range(1, self.dim + 1):
                for block in self.tensor_decompose(s, i):
                    if block not in closure:
                        frontier.add(block)
        return frozenset(closure)

    def ideal_chain(self) -> list[dict]:
        """The proper thick tensor ideals, largest first."""
        out = []
        for m in range(self.n):
            indec = tuple(a * self.p ** (m + 1)
                          for a in range(1, self.p ** (self.n - m - 1) + 1))
            out.append({"m": m, "indecomposables": list(indec)})
        out.append({"m": self.n, "indecomposables": []})
        return out

    # -- membership of identities in the morphism-ideal chain ------------------

    def id_membership(self, k: int, j: int) -> bool:
        """Does the identity of J_k lie in the ideal of the socle mono into J_{j+1}?

        Membership is equivalent to w -> w (x) x^j splitting off J_k as a
        direct summand of J_k (x) J_{j+1}; since the quotient by that image
        is J_k (x) J_j on the nose, splitting is decided exactly by the
        Krull-Schmidt identity type(J_k (x) J_{j+1}) = [k] + type(J_k (x) J_j).
        """
        if not (1 <= k <= self.dim and 0 <= j < self.dim):
            raise ValueError("need 1 <= k <= p^n and 0 <= j < p^n")
        if j == 0:
            return True  # the generator is then split; the ideal is everything
        big = self.tensor_decompose(k, j + 1)
        small = self.tensor_decompose(k, j)
        return tuple(sorted((k,) + small, reverse=True)) == big

    def id_membership_by_retraction(self, k: int, j: int) -> bool:
        """Reference decision: solve the module-retraction system directly.

        Sets up R X = x R and R Phi = id over F_p with R the unknown
        k x (k(j+1)) matrix; feasible only at small (p, n), used to
        cross-validate :meth:`id_membership`.
        """
        if j == 0:
            return True
        p = self.p
        dim_n = k * (j + 1)
        x_small = np.zeros((k, k), dtype=np.int64)
        for u in range(k - 1):
            x_small[u + 1, u] = 1
        x_big = np.zeros((dim_n, dim_n), dtype=np.int64)
        for u in range(k):
            for vv in range(j + 1):
                col = u * (j + 1) + vv
                for (i, jj), c in self.terms.items():
                    if u + i < k and vv + jj < j + 1:
                        x_big[(u + i) * (j + 1) + (vv + jj), col] += c
        x_big %= p
        phi = np.zeros((dim_n, k), dtype=np.int64)
        for u in range(k):
            phi[u * (j + 1) + j, u] = 1
        eye_k = np.eye(k, dtype=np.int64)
        eye_n = np.eye(dim_n, dtype=np.int64)
        a_comm = (np.kron(x_big.T, eye_k) - np.kron(eye_n, x_small)) % p
        a_retr = np.kron(phi.T, eye_k) % p
        a = np.vstack([a_comm, a_retr])
        b = np.concatenate([np.zeros(a_comm.shape[0], dtype=np.int64),
                            eye_k.reshape(-1)])
        aug = np.hstack([a, b[:, None]]) % p
        rank_a = _rank_mod(a.astype(self._dtype()), p)
        rank_aug = _rank_mod(aug.astype(self._dtype()), p)
        return rank_a == rank_aug

    # -- the socle image of a product of socle monos ---------------------------

    def socle_witness(self, a: int, b: int) -> dict:
        """Where the tensor of two socle monomorphisms lands.

        When binom(a+b, a) is nonzero mod p, the image of x^a (x) x^b is
        checked by linear algebra to lie in the span of socles of blocks of
        size at least a+b+1.
        """
        if not (0 <= a < self.dim and 0 <= b < self.dim and a + b < self.dim):
            raise ValueError("need 0 <= a, b and a + b < p^n")
        binom = math.comb(a + b, a) % self.p
        record = {"a": a, "b": b, "binom_mod_p": binom,
                  "min_block": a + b + 1}
        if a == 0 or b == 0:
            record.update({"applicable": True, "in_deep_summand": True,
                           "note": "one factor is the unit"})
            return record
        if binom == 0:
            record.update({"applicable": False, "in_deep_summand": None})
            return record
        aa, bb = a + 1, b + 1
        d = aa * bb
        vecs = np.eye(d, dtype=self._dtype()).reshape(aa, bb, d)
        for _ in range(a + b):
            image = self._apply_operator(aa, bb, vecs)
            basis = _column_basis(image.reshape(d, -1), self.p)
            vecs = basis.reshape(aa, bb, basis.shape[1])
        basis_mat = vecs.reshape(d, -1)
        w = np.zeros((d, 1), dtype=self._dtype())
        w[a * bb + b, 0] = 1
        # the socle vector must be killed by x and lie in the image of x^(a+b)
        xw = self._apply_operator(aa, bb, w.reshape(aa, bb, 1))
        in_socle = not xw.any()
        r0 = _rank_mod(basis_mat.copy(), self.p)
        r1 = _rank_mod(np.hstack([basis_mat, w]), self.p)
        record.update({"applicable": True, "kills_x": bool(in_socle),
                       "in_deep_summand": bool(r0 == r1)})
        return record


# -- exact F_p linear algebra (dense, vectorised) ------------------------------


def _row_echelon_mod(mat: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """In-place forward elimination mod p; returns (matrix, rank)."""
    m, ncols = mat.shape
    r = 0
    for col in range(ncols):
        if r == m:
            break
        nz = np.nonzero(mat[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        val = int(mat[r, col])
        if val != 1:
            inv = pow(val, p - 2, p)
            mat[r] = (mat[r] * inv) % p
        rows = np.nonzero(mat[r + 1:, col])[0]
        if rows.size:
            idx = r + 1 + rows
            factors = (p - mat[idx, col]).astype(mat.dtype)
            mat[idx] = (mat[idx] + factors[:, None] * mat[r]) % p
        r += 1
    return mat, r


def _rank_mod(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return _row_echelon_mod(np.ascontiguousarray(mat), p)[1]


def _column_basis(mat: np.ndarray, p: int) -> np.ndarray:
    """A basis of the column space, as columns (echelon rows transposed)."""
    if mat.size == 0:
        return mat.reshape(mat.shape[0], 0)
    ech, rank = _row_echelon_mod(np.ascontiguousarray(mat.T), p)
    return ech[:rank].T.copy()


def _type_from_ranks(ranks: list[int]) -> JordanType:
    """Block sizes from d = rank(X^0) >= rank(X^1) >= ... >= 0."""
    ranks = list(ranks) + [0]
    blocks = []
    max_size = len(ranks) - 2
    for size in range(1, max_size + 1):
        count = (ranks[size - 1] - ranks[size]) - (ranks[size] - ranks[size + 1])
        if count < 0:
            raise AssertionError("rank sequence is not concave")
        blocks.extend([size] * count)
    return tuple(sorted(blocks, reverse=True))


# -- Lucas primality of the ideal chain ----------------------------------------


def prime_test(p: int, n: int, j: int) -> dict:
    """Is the ideal generated by the socle mono into J_{j+1} prime?

    Not prime exactly when some binomial binom(j, a) with 0 < a < j is
    nonzero mod p; by base-p digits this happens unless j is a power of p.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 1 <= j <= p ** n:
        raise ValueError("need 1 <= j <= p^n")
    digits = []
    x = j
    while x:
        digits.append(x % p)
        x //= p
    weight = sum(digits)
    if weight == 1:  # j is a power of p: every proper binomial vanishes
        return {"j": j, "prime": True, "witness": None}
    # peel one unit of the lowest nonzero digit
    i = next(idx for idx, d in enumerate(digits) if d)
    a = p ** i
    binom = math.comb(j, a) % p
    assert 0 < a < j and binom != 0
    return {"j": j, "prime": False, "witness": [a, j - a],
            "binom_mod_p": binom}


def green_independence(p: int, n: int, fgl1, fgl2) -> bool:
    """Do two formal group laws give identical decomposition tables?"""
    alg1 = FGLAlgebra(p, n, fgl1)
    alg2 = FGLAlgebra(p, n, fgl2)
    if alg1.terms == alg2.terms:
        return True
    return alg1.decomposition_table() == alg2.decomposition_table()


@lru_cache(maxsize=None)
def _floor_log(p: int, j: int) -> int:
    m = 0
    while p ** (m + 1) <= j:
        m += 1
    return m


def classify(alg: FGLAlgebra) -> dict:
    """Full classification report for one algebra.

    Recomputes the thick-ideal chain from singleton closures, the object
    map of the morphism-ideal chain from identity membership, and the
    Lucas primality pattern, and checks each against the expected shape.
    """
    p, n, dim = alg.p, alg.n, alg.dim
    chain = alg.ideal_chain()
    expected = {m: frozenset(e["indecomposables"]) for m, e in
                ((e["m"], e) for e in chain)}

    closure_ok = True
    closures = {}
    for s in range(1, dim + 1):
        cl = alg.thick_closure([s])
        closures[s] = sorted(cl)
        v = 0
        while s % p == 0:
            v += 1
            s //= p
        m = v - 1
        want = frozenset(range(1, dim + 1)) if m < 0 else expected[m]
        if cl != want:
            closure_ok = False

    ob_map = {}
    ob_ok = True
    for j in range(1, dim):
        members = frozenset(k for k in range(1, dim + 1)
                            if alg.id_membership(k, j))
        m = _floor_log(p, j)
        ob_map[j] = m
        if members != expected[m]:
            ob_ok = False

    primes = []
    lucas_ok = True
    for j in range(1, dim + 1):
        rec = prime_test(p, n, j)
        if rec["prime"]:
            primes.append(j)
        is_power = j in {p ** t for t in range(n + 1)}
        if rec["prime"] != is_power:
            lucas_ok = False

    restriction_ok = True
    for m in range(n):
        q = p ** m
        if q <= dim and alg.restriction_type(q, m) != tuple([1] * q):
            restriction_ok = False
        if q + 1 <= dim and alg.restriction_type(q + 1, m) != tuple(
                [2] + [1] * (q - 1)):
            restriction_ok = False

    return {
        "p": p,
        "n": n,
        "fgl": alg.fgl_name,
        "chain": chain,
        "singleton_closures": closures,
        "closure_matches_chain": closure_ok,
        "ob_map": ob_map,
        "ob_matches_chain": ob_ok,
        "primes": primes,
        "primes_are_p_powers": lucas_ok,
        "restriction_images_ok": restriction_ok,
        "all_pass": closure_ok and ob_ok and lucas_ok and restriction_ok,
    }
