from fractions import Fraction as F

import pytest

from conftest import make_calabi, make_two_level
from hcmu.angulation import BLACK, WHITE
from hcmu.builders import build_one_cone, build_surface
from hcmu.dataset import (
    DataSet,
    census,
    cone_points,
    realized_angle_vector,
    realized_prescription,
    validate_dataset,
)
from hcmu.errors import HcmuError


def test_calabi_is_valid(calabi):
    assert validate_dataset(calabi) == []


def test_ratio_one_rejected(calabi):
    ma = calabi.angulation
    with pytest.raises(HcmuError, match="BadRatio"):
        DataSet(ma, 2.0, F(1), calabi.weights, calabi.face_levels)


def test_zero_weight_rejected(calabi):
    ma = calabi.angulation
    weights = list(calabi.weights)
    weights[0] = F(0)
    with pytest.raises(HcmuError, match="BadWeight"):
        DataSet(ma, 2.0, F(2, 3), weights, calabi.face_levels)


def test_level_outside_interval_rejected(calabi):
    ma = calabi.angulation
    with pytest.raises(HcmuError, match="BadLevel"):
        DataSet(ma, 2.0, F(2, 3), calabi.weights, [F(1, 2), F(1, 2), F(1)])


def test_calabi_cone_points(calabi):
    pts = cone_points(calabi)
    maxima = [c for c in pts if c.kind == "maximum"]
    minima = [c for c in pts if c.kind == "minimum"]
    saddles = [c for c in pts if c.kind == "saddle"]
    assert len(maxima) == 3 and all(c.angle == 1 and c.smooth for c in maxima)
    assert len(minima) == 2 and all(c.angle == 1 and c.smooth for c in minima)
    assert len(saddles) == 3 and all(c.angle == 2 for c in saddles)


def test_calabi_census(calabi):
    cs = census(calabi)
    assert cs.as_tuple() == (3, 2, 3, 2, 5, 6)
    assert cs.m == 5


def test_one_cone_census():
    ds = build_one_cone(0, 7, 3)
    cs = census(ds)
    assert (cs.a, cs.b) == (10, 9)
    assert realized_angle_vector(ds) == [("saddle", F(9))]


def test_cusp_dataset_white_angles_vanish():
    ds = build_surface(0, [3, 0], {1})
    for c in cone_points(ds):
        if c.kind == "minimum":
            assert c.angle == 0 and not c.smooth


def test_realized_angles_two_level(two_level):
    assert realized_angle_vector(two_level) == [
        ("maximum", F(3, 2)),
        ("minimum", F(1, 4)),
        ("saddle", F(2)),
        ("saddle", F(2)),
    ]


def test_realized_prescription_two_level(two_level):
    g, alpha, Z = realized_prescription(two_level)
    assert g == 0
    assert alpha.entries == (2, 2, F(3, 2), F(1, 4))
    assert Z == {1, 2}


def test_angle_bookkeeping_identity():
    for ds in (make_calabi(), make_two_level(), build_surface(0, [2, 3], {1})):
        ma = ds.angulation
        black_total = sum(
            ds.vertex_angle(v)
            for v in range(ma.num_vertices)
            if ma.colors[v] == BLACK
        )
        white_total = sum(
            ds.vertex_angle(v)
            for v in range(ma.num_vertices)
            if ma.colors[v] == WHITE
        )
        assert black_total * ds.ratio == white_total


def test_poincare_hopf_identity():
    for ds in (make_calabi(), make_two_level(), build_one_cone(1, 4, 3)):
        ma = ds.angulation
        total = sum(1 - F(ma.face_degree(f), 2) for f in range(ma.num_faces))
        total += ma.num_vertices
        assert total == 2 - 2 * ma.genus


def test_dataset_equality_via_canonical_form(calabi):
    other = make_calabi()
    assert calabi == other
    assert calabi.is_isomorphic(other)
    bumped = DataSet(
        other.angulation, other.k0, other.ratio, other.weights,
        [F(1, 3), F(1, 2), F(1, 2)],
    )
    assert calabi != bumped
