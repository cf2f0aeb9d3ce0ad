"""Lattices generated by finite families of subgroups.

The two operations are subgroup sum (join) and intersection (meet); the
closure of a finite seed family under both is again finite whenever it
stays below the configurable cap.  Distributivity is decided by testing
the defining identity on every member triple and reporting the first
failure in a reproducible order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .groups import PresentedGroup, Subgroup, sub_intersect, sub_sum


class CapExceeded(Exception):
    """Raised when a lattice closure grows past the requested cap."""

    def __init__(self, cap: int):
        super().__init__(f"lattice closure exceeded cap of {cap} members")
        self.cap = cap


@dataclass
class LatticeClosure:
    """Closure of a seed family under subgroup sum and intersection.

    ``members`` is deterministic: seeds first in input order, then newly
    discovered subgroups in discovery order.  The join and meet tables map
    index pairs to member indices.
    """

    members: list
    seed_indices: list
    join_table: dict
    meet_table: dict

    @property
    def parent(self) -> PresentedGroup:
        return self.members[0].parent

    def index_of(self, sub: Subgroup) -> int:
        return self.members.index(sub)

    def __len__(self) -> int:
        return len(self.members)


def closure(subgroups: Sequence[Subgroup], cap: int = 512) -> LatticeClosure:
    """Close a family under sum and intersection, up to ``cap`` members.

    Deduplication is by canonical basis, so no two members are equal.
    """
    if not subgroups:
        raise ValueError("need at least one subgroup")
    parent = subgroups[0].parent
    for s in subgroups[1:]:
        if s.parent != parent:
            raise ValueError("subgroups live in different groups")

    members: list = []
    index: dict = {}
    seed_indices = []
    for s in subgroups:
        if s not in index:
            index[s] = len(members)
            members.append(s)
        seed_indices.append(index[s])

    join_table: dict = {}
    meet_table: dict = {}
    frontier = list(range(len(members)))
    while frontier:
        fresh: list = []
        known = len(members)
        for i in frontier:
            for j in range(known):
                for table, op in ((join_table, sub_sum), (meet_table, sub_intersect)):
                    for key in ((i, j), (j, i)):
                        if key in table:
                            continue
                        result = op(members[key[0]], members[key[1]])
                        if result not in index:
                            if len(members) >= cap:
                                raise CapExceeded(cap)
                            index[result] = len(members)
                            members.append(result)
                            fresh.append(index[result])
                        table[key] = index[result]
        frontier = fresh

    # new members appear mid-sweep, so finish the tables over the final set
    n = len(members)
    for i, j in product(range(n), repeat=2):
        if (i, j) not in join_table:
            join_table[(i, j)] = index[sub_sum(members[i], members[j])]
        if (i, j) not in meet_table:
            meet_table[(i, j)] = index[sub_intersect(members[i], members[j])]

    return LatticeClosure(members, seed_indices, join_table, meet_table)


@dataclass
class DistributivityReport:
    """Outcome of a distributivity test over a closed family."""

    distributive: bool
    witness_triple: Optional[tuple] = None
    witness_element: Optional[tuple] = None
    lhs_basis: Optional[object] = None
    rhs_basis: Optional[object] = None


def _first_difference(lhs: Subgroup, rhs: Subgroup):
    """An element of one side missing from the other, as a group element."""
    parent = lhs.parent
    for col in lhs.basis.columns():
        if not rhs.contains_coords(col):
            return parent.element(col)
    for col in rhs.basis.columns():
        if not lhs.contains_coords(col):
            return parent.element(col)
    return None


def triple_distributes(a: Subgroup, b: Subgroup, c: Subgroup) -> bool:
    """Whether ``a & (b + c) == (a & b) + (a & c)``."""
    return sub_intersect(a, sub_sum(b, c)) == sub_sum(
        sub_intersect(a, b), sub_intersect(a, c)
    )


def is_distributive(lat: LatticeClosure) -> DistributivityReport:
    """Test the meet-over-join identity on all member triples.

    The first failing triple in lexicographic index order is reported,
    together with an element of the larger side not in the smaller.
    """
    n = len(lat.members)
    for i, j, k in product(range(n), repeat=3):
        a, b, c = lat.members[i], lat.members[j], lat.members[k]
        lhs = sub_intersect(a, sub_sum(b, c))
        rhs = sub_sum(sub_intersect(a, b), sub_intersect(a, c))
        if lhs != rhs:
            element = _first_difference(lhs, rhs)
            return DistributivityReport(
                distributive=False,
                witness_triple=(i, j, k),
                witness_element=element,
                lhs_basis=lhs.basis,
                rhs_basis=rhs.basis,
            )
    return DistributivityReport(distributive=True)


def family_closure_distributive(
    subgroups: Sequence[Subgroup], cap: int = 512
) -> DistributivityReport:
    return is_distributive(closure(subgroups, cap=cap))
