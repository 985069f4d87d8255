import random
from fractions import Fraction as F

import pytest

from conftest import make_calabi, random_bicolored_angulation
from hcmu.angulation import BLACK, WHITE, MixedAngulation
from hcmu.balance import (
    balance_rows,
    connection_matrix,
    divisibility_check,
    matrix_rank,
    solve_balance,
    solve_tree,
    weight_space_dimension,
)
from hcmu.builders import (
    brute_force_trees,
    build_coprime_tree,
    build_one_cone,
    build_tree,
    tree_angulation,
)
from hcmu.errors import BadTargets, NotATree


def two_leaf_star():
    colors = [BLACK, BLACK, WHITE]
    arcs = [(0, 2), (1, 2)]
    rot = [[(0, "b")], [(1, "b")], [(0, "w"), (1, "w")]]
    return MixedAngulation(colors, arcs, rot, _allow_degenerate=True)


def test_connection_matrix_star():
    conn = connection_matrix(two_leaf_star())
    assert conn.rows == ((1, 0), (0, 1), (1, 1))
    assert conn.black_rows == 2
    assert matrix_rank(conn.rows) == 2


def test_connection_matrix_calabi():
    conn = connection_matrix(make_calabi().angulation)
    assert conn.shape == (5, 6)
    for col in range(6):
        blacks = sum(conn.rows[r][col] for r in range(3))
        whites = sum(conn.rows[r][col] for r in range(3, 5))
        assert blacks == 1 and whites == 1
    assert matrix_rank(conn.rows) == 4  # a - 1


def test_rank_ignores_zero_columns():
    rows = [(1, 0, 0), (1, 0, 1)]
    assert matrix_rank(rows) == 2


def test_rank_is_vertices_minus_one_randomized():
    rng = random.Random(20240)
    for _ in range(200):
        ma = random_bicolored_angulation(rng)
        conn = connection_matrix(ma)
        assert matrix_rank(conn.rows) == ma.num_vertices - 1


def test_signed_row_identity():
    rng = random.Random(41)
    for _ in range(20):
        ma = random_bicolored_angulation(rng)
        conn = connection_matrix(ma)
        for col in range(ma.num_arcs):
            total = sum(conn.rows[r][col] for r in range(conn.black_rows))
            total -= sum(
                conn.rows[r][col] for r in range(conn.black_rows, len(conn.rows))
            )
            assert total == 0


def test_solve_balance_calabi():
    ds = make_calabi()
    targets = {v: F(1) for v in range(5)}
    space = solve_balance(ds.angulation, F(2, 3), targets)
    assert space.kernel_dimension == 2
    assert space.positive_witness is not None
    # the constant weight 1/2 lies in the affine solution set
    rows = balance_rows(connection_matrix(ds.angulation), F(2, 3))
    w = [F(1, 2)] * 6
    conn = connection_matrix(ds.angulation)
    for r, row in enumerate(rows):
        want = F(1) if r < conn.black_rows else F(1)
        assert sum(x * y for x, y in zip(row, w)) == want


def test_solve_balance_cusp_kernel():
    ds = make_calabi()
    targets = {0: F(1), 1: F(1), 2: F(1), 3: F(0), 4: F(0)}
    space = solve_balance(ds.angulation, F(0), targets)
    assert space.kernel_dimension == 3  # b - p = 6 - 3


def test_solve_balance_bad_targets():
    ds = make_calabi()
    with pytest.raises(BadTargets):
        solve_balance(ds.angulation, F(0), {v: F(1) for v in range(5)})


def test_solve_tree_star():
    ma = tree_angulation(3, 1, [(0, 0), (1, 0), (2, 0)])
    assert solve_tree(ma, 3, 1) == (1, 1, 1)


def test_solve_tree_seven_three():
    tree = build_coprime_tree(7, 3)
    ma = tree.as_angulation()
    assert solve_tree(ma, 7, 3) == tree.weights == (3, 3, 1, 2, 3, 2, 1, 3, 3)


def test_solve_tree_values_bounded_and_unique():
    for p, q in [(7, 3), (5, 2), (9, 4), (5, 1)]:
        tree = build_tree(p, q)
        ma = tree.as_angulation()
        weights = solve_tree(ma, p, q)
        assert all(1 <= w <= q for w in weights)
        # uniqueness: the balance system on a tree has trivial kernel
        # any positive ratio gives a trivial kernel on a tree system
        targets = {
            v: (F(q) if ma.colors[v] == BLACK else F(p, 2))
            for v in range(ma.num_vertices)
        }
        space = solve_balance(ma, F(1, 2), targets)
        assert space.kernel_dimension == 0


def test_no_tree_for_four_two():
    assert brute_force_trees(4, 2) == []


def test_solve_tree_rejects_non_tree(calabi):
    with pytest.raises(NotATree):
        solve_tree(calabi.angulation, 3, 2)


def test_divisibility():
    tree = build_tree(14, 6)
    assert divisibility_check(tree.weights, 2)
    assert divisibility_check(build_coprime_tree(7, 3).weights, 1)


def test_divisor_three_forces_contradiction():
    # with (6,3), divisibility by 3 would force the constant weight 3 and
    # degree-1 black vertices only, impossible with 3 white vertices
    assert brute_force_trees(6, 3) == []


def test_weight_space_dimension():
    assert weight_space_dimension(make_calabi()) == 2
    oc = build_one_cone(1, 2, 1)
    assert weight_space_dimension(oc) == 2  # 2g + j0 - 1 = 2 + 1 - 1


def test_dataset_weights_solve_their_own_balance(calabi):
    ds = calabi
    targets = {v: ds.vertex_angle(v) for v in range(5)}
    space = solve_balance(ds.angulation, ds.ratio, targets)
    rows = balance_rows(connection_matrix(ds.angulation), ds.ratio)
    conn = connection_matrix(ds.angulation)
    for r, row in enumerate(rows):
        v = conn.row_vertices[r]
        assert sum(x * y for x, y in zip(row, ds.weights)) == targets[v]
