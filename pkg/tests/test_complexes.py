"""Chain/cochain complexes of subgroup families and their homology."""

import random

from hypothesis import given, settings, strategies as st

from latcoh import (
    AmbientGroup,
    CapExceeded,
    DecomposedGroup,
    chain_complex,
    cochain_complex,
    family_closure_distributive,
    h1_witness,
    homology,
    intersection_of,
    is_boundary,
    is_cycle,
    subgroup_from_generators,
    sum_of,
)
from latcoh.oracle import brute_homology, verify_cocycle_witness

from support import (
    cyclic_family,
    klein_m3,
    mixed_ambient,
    random_family,
)


def test_klein_cochain_orders_and_h1():
    _, family = klein_m3()
    cx = cochain_complex(family)
    assert [cx.terms[q].order() for q in cx.degrees()] == [8, 64, 4]
    res = homology(cx)
    assert res.by_degree[0] == DecomposedGroup(())
    assert res.by_degree[1] == DecomposedGroup((2,))
    assert res.by_degree[2] == DecomposedGroup(())


def test_klein_chain_h0_exceeds_the_sum():
    # the canonical complex of a non-distributive triple: H_0 is strictly
    # larger than the subgroup sum
    _, family = klein_m3()
    res = homology(chain_complex(family))
    assert res.by_degree[0] == DecomposedGroup((2, 2, 2))
    assert sum_of(family).decomposition == DecomposedGroup((2, 2))


def test_three_lines_in_Z2_chain_h0():
    ambient = AmbientGroup(2, ())
    family = [
        subgroup_from_generators(ambient, [[1, 0]]),
        subgroup_from_generators(ambient, [[0, 1]]),
        subgroup_from_generators(ambient, [[1, 1]]),
    ]
    res = homology(chain_complex(family))
    assert res.by_degree[0] == DecomposedGroup((0, 0, 0))
    assert sum_of(family).decomposition == DecomposedGroup((0, 0))
    # pairwise intersections vanish, so every higher degree is forced to zero
    assert res.by_degree[1] == DecomposedGroup(())


def test_degree_range_matches_family_size():
    ambient = AmbientGroup(1, ())
    family = [subgroup_from_generators(ambient, [[k]]) for k in (4, 6)]
    cx = chain_complex(family)
    assert list(cx.degrees()) == [0, 1]
    cx = chain_complex(family, augment=True)
    assert list(cx.degrees()) == [-1, 0, 1]
    res = homology(cx)
    assert sorted(res.by_degree) == [-1, 0, 1]


def test_augmented_chain_exact_for_distributive_pair():
    ambient = AmbientGroup(1, ())
    family = [subgroup_from_generators(ambient, [[k]]) for k in (4, 6)]
    res = homology(chain_complex(family, augment=True))
    assert all(dec.is_trivial for dec in res.by_degree.values())
    res = homology(cochain_complex(family, augment=True))
    assert all(dec.is_trivial for dec in res.by_degree.values())


def test_augmented_chain_not_exact_for_klein():
    _, family = klein_m3()
    res = homology(chain_complex(family, augment=True))
    assert res.by_degree[0] == DecomposedGroup((2,))
    res = homology(cochain_complex(family, augment=True))
    assert res.by_degree[1] == DecomposedGroup((2,))


def test_h1_witness_klein_frozen():
    _, family = klein_m3()
    witness = h1_witness(*family)
    assert witness is not None
    assert [w.coords for w in witness] == [(0, 0), (0, 1), (0, 1)]
    assert verify_cocycle_witness(family, witness)


def test_h1_witness_none_for_distributive_triple():
    ambient = AmbientGroup(1, ())
    family = [subgroup_from_generators(ambient, [[k]]) for k in (4, 6, 10)]
    assert h1_witness(*family) is None


def test_representatives_are_nontrivial_cycles():
    _, family = klein_m3()
    cx = cochain_complex(family)
    res = homology(cx)
    (rep, order), = res.representatives[1]
    assert order == 2
    assert is_cycle(cx, 1, rep)
    assert not is_boundary(cx, 1, rep)
    assert is_boundary(cx, 1, rep + rep)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_h0_cochain_is_the_intersection(seed):
    rng = random.Random(seed)
    ambient = mixed_ambient(rng, max_order=128)
    family = random_family(rng, ambient, rng.randint(1, 4), max_gens=2, span=6)
    res = homology(cochain_complex(family))
    assert res.by_degree[0] == intersection_of(family).decomposition


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_h0_chain_is_the_sum_when_distributive(seed):
    rng = random.Random(seed)
    ambient = mixed_ambient(rng, max_order=64)
    family = random_family(rng, ambient, rng.randint(1, 3), max_gens=2, span=5)
    try:
        report = family_closure_distributive(family, cap=128)
    except CapExceeded:
        return
    if not report.distributive:
        return
    res = homology(chain_complex(family))
    assert res.by_degree[0] == sum_of(family).decomposition
    for q in res.by_degree:
        if q > 0:
            assert res.by_degree[q].is_trivial


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_differentials_compose_to_zero(seed):
    rng = random.Random(seed)
    ambient = mixed_ambient(rng, max_order=128)
    family = random_family(rng, ambient, rng.randint(1, 4), max_gens=3)
    for build in (chain_complex, cochain_complex):
        for augment in (False, True):
            cx = build(family, augment=augment)
            for q, outer in cx.differentials.items():
                inner = cx.differentials.get(q - cx.direction)
                if inner is None:
                    continue
                composite = outer.compose(inner)
                assert composite.is_zero_map()


def test_composite_matrices_vanish_explicitly():
    _, family = klein_m3()
    for build in (chain_complex, cochain_complex):
        cx = build(family, augment=True)
        checked = 0
        for q, outer in cx.differentials.items():
            inner = cx.differentials.get(q - cx.direction)
            if inner is None:
                continue
            product = outer.matrix * inner.matrix
            assert all(
                product[i, j] == 0
                for i in range(product.rows) for j in range(product.cols)
            ) or outer.compose(inner).is_zero_map()
            checked += 1
        assert checked


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_order_bookkeeping_kernel_times_image(seed):
    rng = random.Random(seed)
    ambient = mixed_ambient(rng, max_order=48)
    if ambient.order() is None:
        ambient = AmbientGroup(0, (2, 8))
    family = random_family(rng, ambient, rng.randint(1, 3), max_gens=2)
    cx = chain_complex(family)
    res = homology(cx)
    for q in cx.degrees():
        term = cx.terms[q]
        out = cx.differentials.get(q)
        if out is None or term.order() is None:
            continue
        kernel = subgroup_from_generators(term.group, res.kernels[q].columns())
        image = out.image()
        # |C_q| = |ker d_q| * |im d_q| for finite terms
        assert kernel.order() * image.order() == term.order()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_homology_matches_brute_force(seed):
    rng = random.Random(seed)
    ambient = mixed_ambient(rng, max_order=24)
    if ambient.order() is None:
        ambient = AmbientGroup(0, (12,))
    family = random_family(rng, ambient, rng.randint(1, 3), max_gens=2)
    for build in (chain_complex, cochain_complex):
        cx = build(family)
        exact = homology(cx)
        brute = brute_homology(cx)
        for q in cx.degrees():
            assert exact.by_degree[q] == brute[q]


def test_cyclic_families_resolve():
    rng = random.Random(13)
    for _ in range(20):
        _, family = cyclic_family(rng, max_modulus=2000, max_members=5)
        chain = homology(chain_complex(family))
        cochain = homology(cochain_complex(family))
        assert chain.by_degree[0] == sum_of(family).decomposition
        assert cochain.by_degree[0] == intersection_of(family).decomposition
        for q, dec in chain.by_degree.items():
            if q > 0:
                assert dec.is_trivial
        for q, dec in cochain.by_degree.items():
            if q > 0:
                assert dec.is_trivial
