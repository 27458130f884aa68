from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from joinmirror.hodge import (II, JOIN_HODGE, PAIRINGS, SURFACES, FiberProductSpec,
                              I, KodairaFiber, SurfaceSpec, euler_fiber_product,
                              euler_resolved, hodge_pair, hodge_table, node_count,
                              schoen_h11)


def test_fiber_invariants():
    assert (I(5).components, I(5).euler) == (5, 5)
    assert (I(0).components, I(0).euler) == (1, 0)
    assert (II.components, II.euler) == (1, 2)
    with pytest.raises(ValueError):
        KodairaFiber("III")


def test_all_surfaces_have_euler_twelve():
    assert all(s.euler() == 12 for s in SURFACES.values())


def test_euler_sum_enforced():
    with pytest.raises(ValueError):
        SurfaceSpec("bad", [("0", I(5)), ("inf", I(5))])


def test_fiber_product_euler_numbers():
    assert euler_fiber_product(PAIRINGS["X1*"]) == 45
    assert euler_fiber_product(PAIRINGS["X0*"]) == 50


def test_no_shared_points():
    a = SurfaceSpec("a", [(str(k), I(1)) for k in range(12)])
    b = SurfaceSpec("b", [(f"p{k}", I(1)) for k in range(12)])
    spec = FiberProductSpec(a, b)
    assert euler_fiber_product(spec) == 0 and node_count(spec) == 0


def test_single_shared_nodal_fiber():
    a = SurfaceSpec("a", [(str(k), I(1)) for k in range(12)])
    b = SurfaceSpec("b", [("0", I(1))] + [(f"p{k}", I(1)) for k in range(11)])
    assert node_count(FiberProductSpec(a, b)) == 1


def test_node_counts():
    assert node_count(PAIRINGS["X1*"]) == 45
    assert node_count(PAIRINGS["X0*"]) == 50


def test_resolved_euler_numbers():
    assert euler_resolved(PAIRINGS["X1*"]) == 90
    assert euler_resolved(PAIRINGS["X0*"]) == 100
    assert euler_resolved(PAIRINGS["X3*"]) == 80


def test_h11():
    assert schoen_h11(PAIRINGS["X1*"]) == 47
    assert schoen_h11(PAIRINGS["X0*"]) == 51
    assert schoen_h11(PAIRINGS["X2*"]) == 47
    assert schoen_h11(PAIRINGS["X1*"], d=1) == 48


def test_hodge_pairs_and_mirror_swap():
    assert hodge_pair(PAIRINGS["X1*"]) == (47, 2)
    assert hodge_pair(PAIRINGS["X3*"]) == (43, 3)
    assert hodge_pair(PAIRINGS["X0*"]) == (51, 1)
    for name, row in hodge_table().items():
        assert (row["h21"], row["h11"]) == JOIN_HODGE[name.rstrip("*")]
        assert row["mirror_swap_holds"]


def test_type_ii_at_shared_point_rejected():
    a = SurfaceSpec("a", [("0", II)] + [(f"q{k}", I(1)) for k in range(10)])
    b = SurfaceSpec("b", [("0", I(2))] + [(f"p{k}", I(1)) for k in range(10)])
    with pytest.raises(ValueError):
        node_count(FiberProductSpec(a, b))


def test_json_round_trip():
    for s in SURFACES.values():
        again = SurfaceSpec.from_json(json.dumps(s.to_json()))
        assert again == s


@st.composite
def surfaces(draw, prefix):
    # split 12 into I_b fibers, some over the shared points 0 and inf
    parts, left = [], 12
    while left:
        b = draw(st.integers(1, left))
        parts.append(b)
        left -= b
    names = ["0", "inf"] + [f"{prefix}{k}" for k in range(len(parts))]
    return SurfaceSpec(prefix, [(n, I(b)) for n, b in zip(names, parts)])


@given(surfaces("a"), surfaces("b"))
def test_resolved_euler_is_even(s1, s2):
    spec = FiberProductSpec(s1, s2)
    assert euler_resolved(spec) % 2 == 0
