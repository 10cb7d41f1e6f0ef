import pytest

from klcells.cells import (FiniteCellAnalysis, a_function, cell_orbit_diagnostic,
                           cell_partition, check_P, delta_function,
                           duflo_elements)
from klcells.coxeter import build_system
from klcells.hecke import KLTable


def test_a2_left_cells(a2_finite):
    part = cell_partition(a2_finite, "left", 0)
    classes = [[str(x) for x in cls] for cls in part.classes]
    assert classes == [[""], ["1", "2-1"], ["2", "1-2"], ["1-2-1"]]
    assert part.stability_margin is None


def test_a2_twosided_cells(a2_finite):
    part = cell_partition(a2_finite, "twosided", 0)
    classes = [[str(x) for x in cls] for cls in part.classes]
    assert classes == [[""], ["1", "2", "1-2", "2-1"], ["1-2-1"]]


def test_a_and_delta_values(a2_finite):
    an = FiniteCellAnalysis(a2_finite)
    e = a2_finite.identity
    s1 = a2_finite.element([1])
    w0 = a2_finite.element([1, 2, 1])
    assert an.a[e] == 0 and an.delta[e] == 0
    assert an.a[s1] == 1 and an.delta[s1] == 1
    assert an.a[w0] == 3 and an.delta[w0] == 3
    assert delta_function(an.kl, s1) == 1


def test_duflo_sets():
    assert [str(d) for d in duflo_elements(build_system("A1"))] == ["", "1"]
    an = FiniteCellAnalysis(build_system("B2"))
    w0 = build_system("B2").element([1, 2, 1, 2])
    assert w0 in set(an.duflo)
    assert an.a[w0] == 4 and an.delta[w0] == 4


def test_check_P_passes_small():
    for label in ("A1", "A2", "B2"):
        rep = check_P(build_system(label))
        assert rep["all_pass"], rep
        for key in ("P1", "P2", "P3", "P5", "P6", "P13"):
            assert rep[key] == "pass"


def test_one_duflo_per_cell(a2_finite):
    an = FiniteCellAnalysis(a2_finite)
    duflo = set(an.duflo)
    for part in (an.left, an.right):
        for cls in part.classes:
            assert sum(1 for x in cls if x in duflo) == 1


def test_a_constant_on_twosided_cells():
    for label in ("A2", "B2"):
        an = FiniteCellAnalysis(build_system(label))
        for cls in an.twosided.classes:
            values = {an.a[x] for x in cls}
            assert len(values) == 1


def test_a_function_affine_small(a1_affine):
    kl = KLTable(a1_affine)
    e = a1_affine.identity
    a_e, exact = a_function(a1_affine, e, 8, kl)
    assert a_e == 0 and exact
    s0 = a1_affine.element([0])
    a_s0, exact = a_function(a1_affine, s0, 8, kl)
    assert a_s0 == 1 and exact
    # deep elements are not certified exact at this margin
    deep = a1_affine.element([0, 1, 0, 1, 0, 1])
    _, exact_deep = a_function(a1_affine, deep, 8, kl)
    assert not exact_deep


def test_affine_partition_margins(a1_affine):
    part = cell_partition(a1_affine, "twosided", 6)
    assert part.stability_margin == 4
    assert all(x.length > 4 for x in part.provisional)
    classes = [[str(x) for x in cls] for cls in part.classes]
    assert [""] in classes
    assert len(classes) == 2


def test_cell_orbit_diagnostic_a1(a1_affine):
    rep = cell_orbit_diagnostic(a1_affine, 6)
    assert rep["cells_meeting_coset"] == 2
    assert rep["orbit_count"] == 2
    assert rep["match"]
    assert [""] in rep["finite_looking_cells"]
    assert "caveat" in rep


def test_diagnostic_requires_affine(a2_finite):
    with pytest.raises(ValueError):
        cell_orbit_diagnostic(a2_finite, 4)


def test_monotone_stability(a1_affine):
    small = cell_partition(a1_affine, "twosided", 6)
    large = cell_partition(a1_affine, "twosided", 8)
    # certified cells never shrink when the ball grows
    small_classes = {cls for cls in small.classes}
    for cls in small_classes:
        containing = [c for c in large.classes if set(cls) <= set(c)]
        assert containing, cls


def test_cell_data_records(a2_finite):
    an = FiniteCellAnalysis(a2_finite)
    records = an.cell_data()
    assert len(records) == 6
    by_word = {str(r.element): r for r in records}
    assert by_word["1-2-1"].a_value == 3 and by_word["1-2-1"].is_duflo
    assert by_word["1-2"].is_duflo is False
    assert all(r.a_value <= r.delta_value for r in records)
    assert all(r.a_exact for r in records)
    # left/right/two-sided class indices are consistent with the partitions
    for r in records:
        assert r.element in an.left.classes[r.cell_ids[0]]
        assert r.element in an.right.classes[r.cell_ids[1]]
        assert r.element in an.twosided.classes[r.cell_ids[2]]


def test_duflo_elements_affine_a1(a1_affine):
    # the certified distinguished elements of the infinite dihedral group
    got = duflo_elements(a1_affine, 8)
    assert [str(d) for d in got] == ["", "0", "1"]


def test_a_value_stable_under_ball_growth(a1_affine):
    kl = KLTable(a1_affine)
    s0 = a1_affine.element([0])
    a6, _ = a_function(a1_affine, s0, 6, kl)
    a8, exact8 = a_function(a1_affine, s0, 8, kl)
    assert a6 == a8 == 1 and exact8
