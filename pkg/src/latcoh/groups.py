"""Finitely generated abelian groups, their subgroups, and homomorphisms.

A group is presented as a free cover ``Z^n`` modulo the column span of a
relation matrix.  Elements are coordinate vectors over the cover, kept in a
canonical reduced form, so equality is literal tuple equality.  A subgroup
is stored as the canonical Hermite basis of an integer lattice squeezed
between the relation lattice and the full cover; that makes subgroup
equality, sums, intersections and membership exact and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Iterator, Optional, Sequence

from .intmatrix import (
    HnfSolver,
    IntMatrix,
    hnf,
    inverse_unimodular,
    kernel_basis,
    snf,
    strip_zero_columns,
)


@dataclass(frozen=True)
class DecomposedGroup:
    """Invariant-factor description of a finitely generated abelian group.

    ``invariant_factors`` lists the finite cyclic orders first (each at
    least 2, each dividing the next) followed by one 0 per free factor.

    >>> DecomposedGroup((2, 4, 0)).order() is None
    True
    >>> DecomposedGroup((3,)).order()
    3
    """

    invariant_factors: tuple = ()

    def __post_init__(self):
        previous = None
        seen_zero = False
        for d in self.invariant_factors:
            if d == 1 or d < 0:
                raise ValueError("invariant factors must be 0 or at least 2")
            if d == 0:
                seen_zero = True
                continue
            if seen_zero:
                raise ValueError("free factors must come last")
            if previous is not None and d % previous:
                raise ValueError("finite invariant factors must form a divisibility chain")
            previous = d

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "DecomposedGroup":
        """Canonicalize a bag of cyclic orders (0 meaning an infinite factor).

        >>> DecomposedGroup.from_orders([4, 6, 0])
        DecomposedGroup(invariant_factors=(2, 12, 0))
        """
        orders = [int(o) for o in orders]
        finite = [o for o in orders if o >= 2]
        zeros = sum(1 for o in orders if o == 0)
        factors: tuple = ()
        if finite:
            diag = IntMatrix(
                [[finite[i] if i == j else 0 for j in range(len(finite))] for i in range(len(finite))]
            )
            diagonal = snf(diag, transform=False)
            factors = tuple(
                diagonal[i, i] for i in range(len(finite)) if diagonal[i, i] != 1
            )
        return cls(factors + (0,) * zeros)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariant_factors if d)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return math.prod(self.torsion) if self.torsion else 1

    def direct_sum(self, other: "DecomposedGroup") -> "DecomposedGroup":
        finite = self.torsion + other.torsion
        merged: tuple
        if finite:
            diag = IntMatrix(
                [[finite[i] if i == j else 0 for j in range(len(finite))] for i in range(len(finite))]
            )
            diagonal = snf(diag, transform=False)
            merged = tuple(
                diagonal[i, i] for i in range(len(finite)) if diagonal[i, i] != 1
            )
        else:
            merged = ()
        return DecomposedGroup(merged + (0,) * (self.free_rank + other.free_rank))

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = [f"Z/{d}" if d else "Z" for d in self.invariant_factors]
        return " x ".join(parts)


class PresentedGroup:
    """An abelian group given as ``Z^ngens`` modulo a relation lattice."""

    def __init__(self, ngens: int, relations: Optional[IntMatrix] = None):
        if ngens < 0:
            raise ValueError("generator count must be nonnegative")
        if relations is None:
            relations = IntMatrix([[] for _ in range(ngens)], cols=0)
        if relations.rows != ngens:
            raise ValueError("relation matrix must have one row per generator")
        self.ngens = ngens
        self.relations = relations

    @cached_property
    def rel_hnf(self) -> IntMatrix:
        return strip_zero_columns(hnf(self.relations, transform=False))

    @cached_property
    def _rel_solver(self) -> HnfSolver:
        return HnfSolver(self.rel_hnf)

    def reduce(self, coords: Sequence[int]) -> tuple:
        coords = tuple(int(v) for v in coords)
        if len(coords) != self.ngens:
            raise ValueError("coordinate length disagrees with generator count")
        return self._rel_solver.reduce(coords)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if isinstance(coords, GroupElement):
            if coords.parent != self:
                raise ValueError("element belongs to a different group")
            return coords
        return GroupElement(self, self.reduce(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def generator(self, i: int) -> "GroupElement":
        return self.element(tuple(1 if j == i else 0 for j in range(self.ngens)))

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.ngens)]

    @cached_property
    def _smith(self):
        S, U, V = snf(self.rel_hnf)
        limit = min(self.ngens, self.rel_hnf.cols)
        orders = tuple(S[i, i] if i < limit else 0 for i in range(self.ngens))
        return orders, U, inverse_unimodular(U)

    def smith_slots(self) -> tuple:
        """Per-generator cyclic orders after diagonalisation (0 means free)."""
        return self._smith[0]

    def smith_transform(self) -> tuple:
        """(orders, U, Uinv): U maps old coordinates to diagonalised ones."""
        return self._smith

    def smith_generators(self) -> list:
        """Pairs ``(element, order)`` for the nontrivial diagonalised slots."""
        orders, _, uinv = self._smith
        out = []
        for i, o in enumerate(orders):
            if o != 1:
                out.append((self.element(uinv.column(i)), o))
        return out

    @cached_property
    def decomposition(self) -> DecomposedGroup:
        orders = self.smith_slots()
        finite = tuple(o for o in orders if o >= 2)
        zeros = sum(1 for o in orders if o == 0)
        return DecomposedGroup(finite + (0,) * zeros)

    def order(self) -> Optional[int]:
        return self.decomposition.order()

    def elements(self, limit: Optional[int] = None) -> Iterator["GroupElement"]:
        """All elements in a fixed order; the group must be finite."""
        size = self.order()
        if size is None:
            raise ValueError("cannot enumerate an infinite group")
        if limit is not None and size > limit:
            raise ValueError(f"group of order {size} exceeds enumeration limit {limit}")
        gens = self.smith_generators()
        ranges = [range(o) for _, o in gens]
        for combo in _cartesian(*ranges):
            coords = [0] * self.ngens
            for c, (g, _) in zip(combo, gens):
                if c:
                    for i, v in enumerate(g.coords):
                        coords[i] += c * v
            yield self.element(coords)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PresentedGroup)
            and self.ngens == other.ngens
            and self.rel_hnf == other.rel_hnf
        )

    def __hash__(self) -> int:
        return hash((self.ngens, self.rel_hnf))

    def __repr__(self) -> str:
        return f"PresentedGroup(ngens={self.ngens}, relations={self.rel_hnf!r})"


class AmbientGroup(PresentedGroup):
    """``Z^rank x Z/d_1 x ... x Z/d_k`` with free coordinates listed first.

    >>> g = AmbientGroup(1, ())
    >>> g.element([7]).coords
    (7,)
    >>> klein = AmbientGroup(0, (2, 2))
    >>> klein.element([3, 5]).coords
    (1, 1)
    """

    def __init__(self, rank: int, torsion: Sequence[int] = ()):
        torsion = tuple(int(d) for d in torsion)
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        previous = None
        for d in torsion:
            if d < 2:
                raise ValueError("torsion orders must be at least 2")
            if previous is not None and d % previous:
                raise ValueError("torsion orders must form a divisibility chain")
            previous = d
        n = rank + len(torsion)
        columns = []
        for i, d in enumerate(torsion):
            col = [0] * n
            col[rank + i] = d
            columns.append(col)
        super().__init__(n, IntMatrix.from_columns(columns, rows=n))
        self.rank = rank
        self.torsion = torsion

    def __repr__(self) -> str:
        return f"AmbientGroup(rank={self.rank}, torsion={self.torsion})"


class GroupElement:
    """A group element held as its canonical coordinate vector."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: PresentedGroup, coords: tuple):
        self.parent = parent
        self.coords = coords

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.parent.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.parent.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.parent.element([-a for a in self.coords])

    def __rmul__(self, k: int) -> "GroupElement":
        return self.parent.element([k * a for a in self.coords])

    __mul__ = __rmul__

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords)

    def _check(self, other: "GroupElement") -> None:
        if self.parent != other.parent:
            raise ValueError("elements belong to different groups")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.parent == other.parent
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"GroupElement{self.coords!r}"


class Subgroup:
    """A subgroup, stored as the canonical Hermite basis of its lattice.

    The lattice always contains the parent's relation lattice, so the basis
    is a full description of the subgroup inside the quotient: membership,
    sums and intersections never have to mention cosets.
    """

    def __init__(self, parent: PresentedGroup, basis: IntMatrix):
        self.parent = parent
        self.basis = basis

    @cached_property
    def solver(self) -> HnfSolver:
        return HnfSolver(self.basis)

    def express(self, element: GroupElement) -> Optional[tuple]:
        """Coefficients writing ``element`` in the basis, or None."""
        if element.parent != self.parent:
            raise ValueError("element belongs to a different group")
        return self.solver.solve(element.coords)

    def contains(self, element: GroupElement) -> bool:
        return self.express(element) is not None

    def contains_coords(self, coords: Sequence[int]) -> bool:
        return self.solver.solve(coords) is not None

    def is_subset(self, other: "Subgroup") -> bool:
        if self.parent != other.parent:
            raise ValueError("subgroups live in different groups")
        return all(other.solver.solve(col) is not None for col in self.basis.columns())

    def element_from_coefficients(self, coeffs: Sequence[int]) -> GroupElement:
        return self.parent.element(self.basis.apply(coeffs))

    @cached_property
    def as_group(self) -> PresentedGroup:
        """The subgroup as an abstract presented group.

        Generators are the basis columns; relations are the coefficient
        vectors that land in the parent's relation lattice.
        """
        stacked = self.basis.hstack(self.parent.rel_hnf)
        ker = kernel_basis(stacked)
        coeff_rows = ker.take_rows(range(self.basis.cols))
        rel = strip_zero_columns(hnf(coeff_rows, transform=False))
        return PresentedGroup(self.basis.cols, rel)

    def generators(self) -> list:
        return [self.parent.element(col) for col in self.basis.columns()]

    @property
    def decomposition(self) -> DecomposedGroup:
        return self.as_group.decomposition

    def order(self) -> Optional[int]:
        return self.as_group.order()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.basis))

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return sub_sum(self, other)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return sub_intersect(self, other)

    def __repr__(self) -> str:
        return f"Subgroup(basis_columns={self.basis.columns()!r})"


def _canonical_subgroup(parent: PresentedGroup, columns: Iterable[Sequence[int]]) -> Subgroup:
    cols = [list(c) for c in columns] + [list(c) for c in parent.rel_hnf.columns()]
    stacked = IntMatrix.from_columns(cols, rows=parent.ngens)
    basis = strip_zero_columns(hnf(stacked, transform=False))
    return Subgroup(parent, basis)


def subgroup_from_generators(parent: PresentedGroup, generators: Iterable) -> Subgroup:
    """Subgroup generated by the given elements (or coordinate vectors).

    >>> z = AmbientGroup(1)
    >>> subgroup_from_generators(z, [[4], [6]]).basis
    IntMatrix([[2]])
    """
    cols = []
    for g in generators:
        elem = parent.element(g)
        cols.append(elem.coords)
    return _canonical_subgroup(parent, cols)


def zero_subgroup(parent: PresentedGroup) -> Subgroup:
    return _canonical_subgroup(parent, [])


def full_subgroup(parent: PresentedGroup) -> Subgroup:
    return _canonical_subgroup(parent, IntMatrix.identity(parent.ngens).columns())


def sub_sum(a: Subgroup, b: Subgroup) -> Subgroup:
    """Smallest subgroup containing both (the lattice join)."""
    if a.parent != b.parent:
        raise ValueError("subgroups live in different groups")
    cols = list(a.basis.columns()) + list(b.basis.columns())
    stacked = IntMatrix.from_columns(cols, rows=a.parent.ngens)
    return Subgroup(a.parent, strip_zero_columns(hnf(stacked, transform=False)))


def sub_intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    """Intersection (the lattice meet), via the kernel of the paired bases."""
    if a.parent != b.parent:
        raise ValueError("subgroups live in different groups")
    stacked = a.basis.hstack(b.basis)
    ker = kernel_basis(stacked)
    coeffs = ker.take_rows(range(a.basis.cols))
    cols = [a.basis.apply(coeffs.column(j)) for j in range(coeffs.cols)]
    stackedcols = IntMatrix.from_columns(cols, rows=a.parent.ngens)
    return Subgroup(a.parent, strip_zero_columns(hnf(stackedcols, transform=False)))


def sum_of(subgroups: Sequence[Subgroup]) -> Subgroup:
    if not subgroups:
        raise ValueError("need at least one subgroup")
    acc = subgroups[0]
    for s in subgroups[1:]:
        acc = sub_sum(acc, s)
    return acc


def intersection_of(subgroups: Sequence[Subgroup]) -> Subgroup:
    if not subgroups:
        raise ValueError("need at least one subgroup")
    acc = subgroups[0]
    for s in subgroups[1:]:
        acc = sub_intersect(acc, s)
    return acc


class Homomorphism:
    """A homomorphism given by an integer matrix on free covers."""

    def __init__(self, source: PresentedGroup, target: PresentedGroup, matrix: IntMatrix):
        if matrix.rows != target.ngens or matrix.cols != source.ngens:
            raise ValueError("matrix shape disagrees with the groups")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, group: PresentedGroup) -> "Homomorphism":
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def zero(cls, source: PresentedGroup, target: PresentedGroup) -> "Homomorphism":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def is_well_defined(self) -> bool:
        """Whether every source relation maps into the target relations."""
        for col in self.source.rel_hnf.columns():
            if any(self.target.reduce(self.matrix.apply(col))):
                return False
        return True

    def apply(self, element: GroupElement) -> GroupElement:
        if element.parent != self.source:
            raise ValueError("element is not in the source group")
        return self.target.element(self.matrix.apply(element.coords))

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """``self`` after ``inner``."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        return Homomorphism(inner.source, self.target, self.matrix * inner.matrix)

    def is_zero_map(self) -> bool:
        return all(
            not any(self.target.reduce(self.matrix.column(j)))
            for j in range(self.matrix.cols)
        )

    def kernel(self) -> Subgroup:
        stacked = self.matrix.hstack(self.target.rel_hnf)
        ker = kernel_basis(stacked)
        coords = ker.take_rows(range(self.source.ngens))
        return _canonical_subgroup(self.source, coords.columns())

    def image(self) -> Subgroup:
        return _canonical_subgroup(self.target, self.matrix.columns())

    def solve(self, target_value: GroupElement) -> Optional[GroupElement]:
        """A deterministic preimage of ``target_value``, or None."""
        if target_value.parent != self.target:
            raise ValueError("value is not in the target group")
        from .intmatrix import solve_linear

        stacked = self.matrix.hstack(self.target.rel_hnf)
        sol = solve_linear(stacked, target_value.coords)
        if sol is None:
            return None
        return self.source.element(sol[: self.source.ngens])

    def __repr__(self) -> str:
        return f"Homomorphism({self.matrix!r})"


def kernel_image(f: Homomorphism) -> tuple:
    """The kernel and image subgroups of a homomorphism."""
    return f.kernel(), f.image()


def solve(f: Homomorphism, target_value: GroupElement) -> Optional[GroupElement]:
    return f.solve(target_value)


def quotient(group: PresentedGroup, sub: Subgroup) -> tuple:
    """Invariant factors of ``group / sub`` and the projection map.

    The projection's target is an :class:`AmbientGroup` realising the
    decomposition, with free coordinates first.

    >>> klein = AmbientGroup(0, (2, 2))
    >>> diag = subgroup_from_generators(klein, [[1, 1]])
    >>> quotient(klein, diag)[0]
    DecomposedGroup(invariant_factors=(2,))
    """
    if sub.parent != group:
        raise ValueError("subgroup lives in a different group")
    basis = sub.basis
    n, m = group.ngens, basis.cols
    S, U, _ = snf(basis)
    diag = [S[i, i] for i in range(m)]
    if any(d == 0 for d in diag):
        raise AssertionError("canonical basis columns should be independent")
    torsion_rows = [i for i, d in enumerate(diag) if d >= 2]
    free_rows = list(range(m, n))
    target = AmbientGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    proj_matrix = U.take_rows(free_rows + torsion_rows)
    proj = Homomorphism(group, target, proj_matrix)
    if not proj.is_well_defined():
        raise AssertionError("quotient projection must kill the relation lattice")
    dec = DecomposedGroup(
        tuple(diag[i] for i in torsion_rows) + (0,) * len(free_rows)
    )
    return dec, proj
