from __future__ import annotations

import pytest

from joinmirror.cohomology import (calabi_yau_x0, calabi_yau_x1, calabi_yau_y1,
                                   chern_of_dual_tautological_sub_p2, intersection_number,
                                   kappa_x0, kappa_x1, kappa_y1, relative_hyperplane,
                                   resolved_join_x1, ring_grassmannian_2_5, ring_product,
                                   ring_projective_bundle, ring_projective_space)


def test_projective_plane():
    p2 = ring_projective_space(2)
    h = p2.cls("h")
    assert p2.rank == 3
    assert (h * h).integrate() == 1
    assert (h * h * h).is_zero()


def test_projective_space_needs_positive_dimension():
    with pytest.raises(ValueError):
        ring_projective_space(0)


def test_grassmannian():
    gr = ring_grassmannian_2_5()
    s1 = gr.cls("s1")
    assert gr.rank == 10
    assert intersection_number(gr, [s1] * 6) == 5
    assert (s1 * gr.cls("s33")).is_zero()
    assert gr.check_associative() and gr.check_graded() and gr.is_poincare_nondegenerate()


def test_products():
    p2 = ring_projective_space(2, "a")
    q2 = ring_projective_space(2, "b")
    pp = ring_product(p2, q2)
    assert pp.rank == 9
    assert (pp.cls("a^2*b^2")).integrate() == 1
    assert ring_product(ring_grassmannian_2_5(), pp).rank == 90
    assert pp.check_associative() and pp.is_poincare_nondegenerate()


def test_trivial_bundle_over_p1():
    p1 = ring_projective_space(1)
    bundle = ring_projective_bundle(p1, [], 2)
    xi = relative_hyperplane(bundle)
    assert bundle.rank == 4
    assert (xi * xi).is_zero()
    assert bundle.check_associative() and bundle.is_poincare_nondegenerate()


def test_grothendieck_relation():
    p2 = ring_projective_space(2)
    h = p2.cls("h")
    chern = [h * 3, h * h * 3]
    bundle = ring_projective_bundle(p2, chern, 3)
    xi = relative_hyperplane(bundle)
    c1 = bundle.cls("h") * 3
    c2 = bundle.cls("h^2") * 3
    assert (xi ** 3 + c1 * xi * xi + c2 * xi).is_zero()
    assert (xi * xi * bundle.cls("h^2")).integrate() == 1


def test_bundle_rejects_bad_chern_degree():
    p2 = ring_projective_space(2)
    with pytest.raises(ValueError):
        ring_projective_bundle(p2, [p2.cls("h^2")], 2)


def test_whitney_tautological_kernel():
    p2 = ring_projective_space(2)
    h = p2.cls("h")
    c = chern_of_dual_tautological_sub_p2(p2, h)
    total = p2.one() + c[0] + c[1]
    assert total == p2.one() - h + h * h
    assert (total * (p2.one() + h)) == p2.one()


def test_resolved_join_dimension():
    ring, classes = resolved_join_x1()
    assert ring.dim == 11
    assert set(classes) == {"L", "H1", "H2", "D1", "D2"}


def test_kappa_x1():
    k = kappa_x1()
    assert k == {(1, 1, 1): 0, (1, 1, 2): 5, (1, 2, 2): 5, (2, 2, 2): 0}


def test_kappa_y1_and_x0():
    assert kappa_y1() == {(1, 1, 1): 15, (1, 1, 2): 15, (1, 2, 2): 5, (2, 2, 2): 0}
    assert kappa_x0() == 25


@pytest.mark.parametrize("build, rank", [(calabi_yau_x1, 6), (calabi_yau_y1, 6), (calabi_yau_x0, 4)])
def test_calabi_yau_rings(build, rank):
    ring = build().ring
    assert ring.rank == rank
    assert ring.check_associative()
    assert ring.check_graded()
    assert ring.is_poincare_nondegenerate()
    assert (ring.one() * ring.basis_class(ring.top)) == ring.basis_class(ring.top)


def test_x1_join_classes_restrict_to_sum_of_divisors():
    x = calabi_yau_x1()
    cl = x.classes
    total = x.divisor("D1") + x.divisor("D2")
    for name in ("L", "H1", "H2"):
        assert x.restrict(cl[name], 2) == total
