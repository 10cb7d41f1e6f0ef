import random

import numpy as np
import pytest

from klcells.modcyclic import (FGLAlgebra, _column_basis, _rank_mod,
                               _row_echelon_mod, green_independence, classify,
                               prime_test)


def tangent_law_terms(p: int, degree: int) -> dict:
    """(u+v)/(1+uv) truncated: a formal group law different from the builtins."""
    # (u+v) * sum_k (-uv)^k, total degree capped
    terms = {}
    for k in range(degree // 2 + 1):
        c = (-1) ** k % p
        for extra in ((1 + k, k), (k, 1 + k)):
            if extra[0] + extra[1] <= degree and c:
                terms[extra] = (terms.get(extra, 0) + c) % p
    return {key: c for key, c in terms.items() if c}


def test_builtin_laws():
    mult = FGLAlgebra(2, 2, "multiplicative")
    assert mult.terms == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    add = FGLAlgebra(2, 2, "additive")
    assert add.terms == {(1, 0): 1, (0, 1): 1}
    with pytest.raises(ValueError):
        FGLAlgebra(4, 1)
    with pytest.raises(ValueError):
        FGLAlgebra(2, 0)
    with pytest.raises(ValueError):
        FGLAlgebra(2, 1, "exotic")


def test_custom_law_validation():
    # the multiplicative law passed explicitly
    alg = FGLAlgebra(3, 1, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert alg.fgl_name == "custom"
    # broken unit: F(u,0) != u
    with pytest.raises(ValueError):
        FGLAlgebra(3, 1, {(1, 0): 1, (0, 1): 1, (2, 0): 1})
    # asymmetric
    with pytest.raises(ValueError):
        FGLAlgebra(3, 1, {(1, 0): 1, (0, 1): 1, (2, 1): 1})
    # symmetric but not associative
    with pytest.raises(ValueError):
        FGLAlgebra(5, 1, {(1, 0): 1, (0, 1): 1, (2, 2): 1})


def test_tangent_law_is_accepted_and_matches():
    for p, n in ((3, 1), (5, 1)):
        law = tangent_law_terms(p, p ** n)
        alg = FGLAlgebra(p, n, law)
        ref = FGLAlgebra(p, n, "multiplicative")
        assert alg.decomposition_table() == ref.decomposition_table()


def test_tensor_decompose_examples():
    assert FGLAlgebra(2, 1).tensor_decompose(2, 2) == (2, 2)
    assert FGLAlgebra(3, 1).tensor_decompose(2, 2) == (3, 1)
    alg = FGLAlgebra(2, 3)
    assert alg.tensor_decompose(8, 3) == (8, 8, 8)
    with pytest.raises(ValueError):
        alg.tensor_decompose(0, 1)
    with pytest.raises(ValueError):
        alg.tensor_decompose(1, 9)


def test_tensor_dimension_unit_commutativity():
    alg = FGLAlgebra(3, 2)
    for a in range(1, 10):
        for b in range(a, 10):
            t = alg.tensor_decompose(a, b)
            assert sum(t) == a * b
            assert alg.tensor_decompose(b, a) == t
        assert alg.tensor_decompose(1, a) == (a,)


def test_clebsch_gordan_oracle():
    # J_a (x) J_b = sum of J_{a+b-1-2i} whenever a+b-1 <= p
    for p, n in ((5, 1), (5, 2), (3, 1), (3, 2)):
        alg = FGLAlgebra(p, n)
        for a in range(1, p + 1):
            for b in range(1, p + 1):
                if a + b - 1 > p:
                    continue
                expected = tuple(sorted((a + b - 1 - 2 * i
                                         for i in range(min(a, b))),
                                        reverse=True))
                assert alg.tensor_decompose(a, b) == expected


def test_green_ring_associativity_sampled():
    alg = FGLAlgebra(2, 2)
    rng = random.Random(3)

    def product(multiset_a, multiset_b):
        out = []
        for x in multiset_a:
            for y in multiset_b:
                out.extend(alg.tensor_decompose(x, y))
        return tuple(sorted(out, reverse=True))

    for _ in range(10):
        a, b, c = (rng.randint(1, 4) for _ in range(3))
        assert product(product((a,), (b,)), (c,)) == product((a,), product((b,), (c,)))


def test_restriction_type():
    alg = FGLAlgebra(3, 2)
    assert alg.restriction_type(3, 1) == (1, 1, 1)     # J_{p^m} -> unit^(p^m)
    assert alg.restriction_type(4, 1) == (2, 1, 1)     # J_{p^m+1} -> J_2 + units
    assert alg.restriction_type(7, 0) == (7,)          # m = 0 is the identity
    assert alg.restriction_type(2, 1) == (1, 1)
    with pytest.raises(ValueError):
        alg.restriction_type(3, 2)


def test_restriction_matches_matrix_oracle():
    # Jordan type of the shift-by-q power, via explicit ranks
    alg = FGLAlgebra(3, 2)
    for k in range(1, 10):
        for m in range(2):
            q = 3 ** m
            mat = np.zeros((k, k), dtype=np.uint8)
            for u in range(k - q):
                mat[u + q, u] = 1
            ranks = [k]
            power = np.eye(k, dtype=np.uint8)
            while ranks[-1] > 0:
                power = (power @ mat) % 3
                ranks.append(_rank_mod(power.copy(), 3))
            blocks = []
            for size in range(1, len(ranks)):
                prev = ranks[size - 1]
                cur = ranks[size]
                nxt = ranks[size + 1] if size + 1 < len(ranks) else 0
                blocks.extend([size] * ((prev - cur) - (cur - nxt)))
            assert tuple(sorted(blocks, reverse=True)) == alg.restriction_type(k, m)


def test_negligible_after_restriction():
    for p, n in ((2, 3), (3, 3), (5, 3)):
        alg = FGLAlgebra(p, n)
        for m in range(n):
            for k in range(1, p ** n + 1):
                assert alg.negligible_after_restriction(k, m) == (
                    k % p ** (m + 1) == 0)


def test_thick_closure_examples():
    alg22 = FGLAlgebra(2, 2)
    assert alg22.thick_closure([4]) == frozenset({4})
    assert alg22.thick_closure([2]) == frozenset({2, 4})
    alg32 = FGLAlgebra(3, 2)
    assert alg32.thick_closure([9]) == frozenset({9})
    assert alg32.thick_closure([3]) == frozenset({3, 6, 9})


def test_id_membership_examples():
    alg = FGLAlgebra(2, 3)
    for k in range(1, 9):
        assert alg.id_membership(k, 0)
    for j in range(1, 8):
        assert not alg.id_membership(1, j)
    # object map: membership of J_k in the ideal from J_{j+1} follows the
    # p-adic pattern p^(floor(log_p j) + 1) | k
    for j in range(1, 8):
        m = 0
        while 2 ** (m + 1) <= j:
            m += 1
        for k in range(1, 9):
            assert alg.id_membership(k, j) == (k % 2 ** (m + 1) == 0)


def test_id_membership_matches_retraction_solver():
    for p, n in ((2, 2), (3, 1)):
        alg = FGLAlgebra(p, n)
        for k in range(1, p ** n + 1):
            for j in range(p ** n):
                assert alg.id_membership(k, j) == \
                    alg.id_membership_by_retraction(k, j)


def test_prime_test():
    assert prime_test(2, 3, 3) == {"j": 3, "prime": False, "witness": [1, 2],
                                   "binom_mod_p": 1}
    assert prime_test(3, 2, 4)["witness"] == [1, 3]
    for p, n in ((2, 3), (3, 2), (5, 1)):
        powers = {p ** t for t in range(n + 1)}
        for j in range(1, p ** n + 1):
            rec = prime_test(p, n, j)
            assert rec["prime"] == (j in powers)
            if not rec["prime"]:
                a, b = rec["witness"]
                assert a + b == j and 0 < a < j


def test_socle_witness():
    alg = FGLAlgebra(3, 1)
    rec = alg.socle_witness(1, 1)
    assert rec["binom_mod_p"] == 2
    assert rec["applicable"] and rec["in_deep_summand"] and rec["kills_x"]
    rec5 = FGLAlgebra(5, 1).socle_witness(2, 1)
    assert rec5["applicable"] and rec5["in_deep_summand"]
    trivial = alg.socle_witness(0, 1)
    assert trivial["in_deep_summand"]
    # p = 2: binom(2,1) = 0, so the criterion does not apply
    na = FGLAlgebra(2, 2).socle_witness(1, 1)
    assert not na["applicable"]


def test_green_independence_small():
    assert green_independence(2, 2, "multiplicative", "multiplicative")
    assert green_independence(2, 2, "multiplicative", "additive")


def test_classify_small():
    rep = classify(FGLAlgebra(2, 2))
    assert rep["all_pass"]
    assert rep["primes"] == [1, 2, 4]
    assert rep["chain"][0] == {"m": 0, "indecomposables": [2, 4]}
    assert rep["chain"][1] == {"m": 1, "indecomposables": [4]}
    assert rep["ob_map"] == {1: 0, 2: 1, 3: 1}


def test_gfp_linear_algebra():
    m = np.array([[1, 2], [2, 4]], dtype=np.uint8)
    assert _rank_mod(m.copy(), 5) == 1
    basis = _column_basis(np.array([[1, 2], [2, 4], [0, 0]], dtype=np.uint8), 5)
    assert basis.shape[1] == 1
    ech, rank = _row_echelon_mod(np.array([[2, 1], [1, 1]], dtype=np.uint8), 3)
    assert rank == 2


def test_string_key_fgl_terms():
    alg = FGLAlgebra(3, 1, {"1,0": 1, "0,1": 1, "1,1": 1})
    assert alg.terms == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert alg.tensor_decompose(2, 2) == (3, 1)
