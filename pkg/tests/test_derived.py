"""Hom/tensor groups and the ext/tor tables of a family."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from latcoh import (
    AmbientGroup,
    DecomposedGroup,
    Homomorphism,
    IntMatrix,
    PresentedGroup,
    ext,
    hom_group,
    induced_precomposition,
    subgroup_from_generators,
    sum_of,
    tensor_group,
    tor,
)
from latcoh.oracle import hom_order_by_counting, tensor_by_presentation

from support import integer_subgroup

Z = AmbientGroup(1, ())


def cyclic(n):
    return AmbientGroup(0, (n,)) if n else AmbientGroup(1, ())


def test_hom_frozen_values():
    assert hom_group(cyclic(6), cyclic(4)).decomposition == DecomposedGroup((2,))
    assert hom_group(cyclic(0), cyclic(6)).decomposition == DecomposedGroup((6,))
    assert hom_group(cyclic(6), cyclic(0)).decomposition == DecomposedGroup(())
    assert hom_group(cyclic(0), cyclic(0)).decomposition == DecomposedGroup((0,))
    two = AmbientGroup(2, ())
    assert hom_group(two, cyclic(0)).decomposition == DecomposedGroup((0, 0))
    assert hom_group(AmbientGroup(0, (2, 4)), cyclic(8)).decomposition == DecomposedGroup((2, 4))


def test_hom_generators_are_homomorphisms():
    source = AmbientGroup(0, (2, 8))
    target = AmbientGroup(0, (4,))
    homs = hom_group(source, target)
    for i in range(homs.rank()):
        coords = [0] * homs.rank()
        coords[i] = 1
        f = homs.to_homomorphism(coords)
        assert f.is_well_defined()
        back = homs.coordinates(f)
        assert back is not None
        assert homs.to_homomorphism(back).matrix == f.matrix


def test_hom_coordinates_reject_foreign_maps():
    source = cyclic(2)
    target = cyclic(3)
    homs = hom_group(source, target)
    assert homs.decomposition.is_trivial
    f = Homomorphism(source, target, IntMatrix([[0]]))
    assert homs.coordinates(f) == ()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_hom_order_matches_counting(seed):
    rng = random.Random(seed)
    def pick():
        k = rng.randint(1, 2)
        torsion = []
        d = rng.choice([2, 2, 3, 4, 5, 6, 8])
        for _ in range(k):
            torsion.append(d)
            d *= rng.choice([1, 2, 3])
        while len(torsion) > 1 and torsion[0] * torsion[1] > 64:
            torsion.pop()
        return AmbientGroup(0, tuple(torsion))
    source, target = pick(), pick()
    if (source.order() or 65) > 64 or (target.order() or 65) > 64:
        return
    homs = hom_group(source, target)
    assert homs.decomposition.order() == hom_order_by_counting(source, target)


def test_tensor_frozen_values():
    assert tensor_group(cyclic(6), cyclic(4)).decomposition == DecomposedGroup((2,))
    assert tensor_group(cyclic(0), cyclic(5)).decomposition == DecomposedGroup((5,))
    assert tensor_group(cyclic(0), cyclic(0)).decomposition == DecomposedGroup((0,))
    two = AmbientGroup(2, ())
    assert tensor_group(two, cyclic(3)).decomposition == DecomposedGroup((3, 3))


def test_tensor_matches_presentation_oracle():
    rng = random.Random(99)
    for _ in range(25):
        a = AmbientGroup(0, (rng.randint(2, 16),))
        b_orders = tuple(sorted([rng.randint(2, 8) for _ in range(rng.randint(1, 2))]))
        try:
            b = AmbientGroup(0, b_orders)
        except ValueError:
            continue
        got = tensor_group(a, b).decomposition
        assert got == tensor_by_presentation(a, b)


def test_pure_tensor_bilinearity():
    a = AmbientGroup(0, (4,))
    b = AmbientGroup(0, (6,))
    t = tensor_group(a, b)
    x, y = a.element([1]), b.element([1])
    assert t.pure_tensor(x + x, y) == t.pure_tensor(x, y) + t.pure_tensor(x, y)
    assert t.pure_tensor(x, 3 * y) == 3 * t.pure_tensor(x, y)
    assert t.pure_tensor(a.zero(), y).is_zero()


def test_induced_precomposition_functoriality():
    a = AmbientGroup(0, (8,))
    b = AmbientGroup(0, (4,))
    m = AmbientGroup(0, (2,))
    f = Homomorphism(b, a, IntMatrix([[2]]))  # b -> a
    assert f.is_well_defined()
    homs_a = hom_group(a, m)
    homs_b = hom_group(b, m)
    induced = induced_precomposition(homs_a, homs_b, f)
    assert induced.is_well_defined()
    for i in range(homs_a.rank()):
        coords = [0] * homs_a.rank()
        coords[i] = 1
        phi = homs_a.to_homomorphism(coords)
        expected = phi.compose(f)
        got = homs_b.to_homomorphism(induced.apply(homs_a.group.element(coords)).coords)
        for gen in b.generators():
            assert got.apply(gen) == expected.apply(gen)


def test_ext_tor_worked_examples():
    family = [integer_subgroup(Z, 4), integer_subgroup(Z, 6)]
    table = ext(family, cyclic(8), 1)
    assert table[0] == DecomposedGroup((8,))
    assert table[1] == DecomposedGroup(())
    table = tor(family, cyclic(4), 1)
    assert table[0] == DecomposedGroup((4,))
    assert table[1] == DecomposedGroup(())


def test_ext_tor_degree_zero_anchor_distributive():
    family = [integer_subgroup(Z, k) for k in (4, 6, 10)]
    total = sum_of(family)  # 2Z, free of rank 1
    module = AmbientGroup(0, (12,))
    table = ext(family, module, 2)
    assert table[0] == hom_group(total.as_group, module).decomposition
    assert all(table[q].is_trivial for q in (1, 2))
    table = tor(family, module, 2)
    assert table[0] == tensor_group(total.as_group, module).decomposition
    assert all(table[q].is_trivial for q in (1, 2))


def test_ext_tor_with_free_module():
    family = [integer_subgroup(Z, 4), integer_subgroup(Z, 6)]
    table = tor(family, cyclic(0), 1)
    assert table[0] == DecomposedGroup((0,))
    assert table[1] == DecomposedGroup(())
    table = ext(family, cyclic(0), 1)
    assert table[0] == DecomposedGroup((0,))
    assert table[1] == DecomposedGroup(())


def test_ext_of_disjoint_lines():
    ambient = AmbientGroup(2, ())
    family = [
        subgroup_from_generators(ambient, [[1, 0]]),
        subgroup_from_generators(ambient, [[0, 1]]),
        subgroup_from_generators(ambient, [[1, 1]]),
    ]
    # pairwise intersections vanish, so the complex is concentrated in
    # degree 0 as three free lines
    table = ext(family, cyclic(2), 2)
    assert table[0] == DecomposedGroup((2, 2, 2))
    assert table[1] == DecomposedGroup(())
    table = tor(family, cyclic(2), 2)
    assert table[0] == DecomposedGroup((2, 2, 2))
    assert table[1] == DecomposedGroup(())


def test_mixed_module_with_free_part():
    family = [integer_subgroup(Z, 4), integer_subgroup(Z, 6)]
    module = PresentedGroup(2, IntMatrix.from_columns([[3, 0]], rows=2))  # Z/3 x Z
    table = tor(family, module, 1)
    assert table[0] == DecomposedGroup((3, 0))
    assert table[1] == DecomposedGroup(())
    table = ext(family, module, 1)
    assert table[0] == DecomposedGroup((3, 0))
    assert table[1] == DecomposedGroup(())


def test_derived_functors_require_free_ambient():
    ambient = AmbientGroup(0, (4,))
    family = [subgroup_from_generators(ambient, [[2]])]
    with pytest.raises(ValueError):
        ext(family, cyclic(2), 1)
    with pytest.raises(ValueError):
        tor(family, cyclic(2), 1)


def test_degrees_beyond_the_top_are_trivial():
    family = [integer_subgroup(Z, 4), integer_subgroup(Z, 6)]
    table = ext(family, cyclic(8), 4)
    assert sorted(table) == [0, 1, 2, 3, 4]
    assert all(table[q].is_trivial for q in (2, 3, 4))
