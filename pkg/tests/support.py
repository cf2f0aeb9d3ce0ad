"""Seeded random constructions shared across the test suite.

Every sampler takes an explicit random.Random so each test owns its seed
and reruns are reproducible.
"""

from __future__ import annotations

import random
from typing import List

from latcoh import AmbientGroup, Subgroup, subgroup_from_generators

# verdict lines from the acceptance gate, replayed in the terminal summary
ACCEPTANCE_VERDICTS: List[str] = []


def finite_ambient(rng: random.Random, max_order: int = 256) -> AmbientGroup:
    """Random finite ambient group with invariant factors multiplying to <= max_order."""
    torsion = []
    order = 1
    d = rng.randint(2, 12)
    while order * d <= max_order:
        torsion.append(d)
        order *= d
        if rng.random() < 0.4:
            break
        d *= rng.randint(1, 3)
        if d < 2:
            d = 2
    if not torsion:
        torsion = [rng.randint(2, max_order)]
    return AmbientGroup(0, tuple(torsion))


def mixed_ambient(rng: random.Random, max_order: int = 256) -> AmbientGroup:
    """One of Z, Z^2, or a random finite group."""
    kind = rng.randrange(3)
    if kind == 0:
        return AmbientGroup(1, ())
    if kind == 1:
        return AmbientGroup(2, ())
    return finite_ambient(rng, max_order)


def random_subgroup(rng: random.Random, ambient: AmbientGroup,
                    max_gens: int = 3, span: int = 9) -> Subgroup:
    gens: List[list] = []
    for _ in range(rng.randint(0, max_gens)):
        vec = []
        for i in range(ambient.ngens):
            if i < ambient.rank:
                vec.append(rng.randint(-span, span))
            else:
                vec.append(rng.randrange(ambient.torsion[i - ambient.rank]))
        gens.append(vec)
    return subgroup_from_generators(ambient, gens)


def random_family(rng: random.Random, ambient: AmbientGroup, n: int,
                  max_gens: int = 3, span: int = 9) -> List[Subgroup]:
    return [random_subgroup(rng, ambient, max_gens, span) for _ in range(n)]


def all_finite_ambients(max_order: int = 64) -> List[AmbientGroup]:
    """Every finite abelian group of order <= max_order, one per invariant chain."""
    found: List[AmbientGroup] = []

    def grow(chain: List[int], order: int) -> None:
        if chain:
            found.append(AmbientGroup(0, tuple(chain)))
        # successors must be multiples of the last factor
        step = chain[-1] if chain else 1
        cand = chain[-1] if chain else 2
        while order * cand <= max_order:
            grow(chain + [cand], order * cand)
            cand += step

    grow([], 1)
    return found


def cyclic_family(rng: random.Random, max_modulus: int = 10 ** 4,
                  max_members: int = 5):
    """(ambient Z/N, family of random cyclic subgroups)."""
    modulus = rng.randint(2, max_modulus)
    ambient = AmbientGroup(0, (modulus,))
    n = rng.randint(1, max_members)
    family = [
        subgroup_from_generators(ambient, [[rng.randrange(modulus)]])
        for _ in range(n)
    ]
    return ambient, family


def integer_subgroup(ambient: AmbientGroup, k: int) -> Subgroup:
    """kZ inside ambient Z (rank 1, no torsion)."""
    assert ambient.rank == 1 and not ambient.torsion
    return subgroup_from_generators(ambient, [[k]] if k else [])


def klein_m3():
    """The three order-2 subgroups of the Klein four-group."""
    ambient = AmbientGroup(0, (2, 2))
    family = [
        subgroup_from_generators(ambient, [[1, 0]]),
        subgroup_from_generators(ambient, [[0, 1]]),
        subgroup_from_generators(ambient, [[1, 1]]),
    ]
    return ambient, family
