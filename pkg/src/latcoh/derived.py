"""Hom groups, tensor products, and Ext/Tor against the subgroup resolution.

Both binary functors are computed through the Smith decompositions of the
two presented groups: every homomorphism or tensor class decomposes along
pairs of diagonal slots, with the classical cyclic rules deciding each
pair.  Ext and Tor then arise by applying the functor termwise to the
chain complex of a family of subgroups of a free ambient group and taking
(co)homology, which stays exact because every intermediate object keeps an
explicit finite presentation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import ChainComplex, ComplexTerm, chain_complex, homology_at
from .groups import (
    DecomposedGroup,
    GroupElement,
    Homomorphism,
    PresentedGroup,
    Subgroup,
)
from .intmatrix import IntMatrix, solve_linear


def _diag_presentation(orders: Sequence[int]) -> PresentedGroup:
    cols = []
    n = len(orders)
    for i, o in enumerate(orders):
        if o:
            col = [0] * n
            col[i] = o
            cols.append(col)
    return PresentedGroup(n, IntMatrix.from_columns(cols, rows=n))


@dataclass
class HomGroup:
    """The group of homomorphisms between two presented groups.

    ``slot_pairs`` lists (source_slot, target_slot, order, generator); the
    generators are honest Homomorphisms and freely/cyclically generate the
    hom group.  ``group`` is the matching diagonal presentation, used when
    hom groups become terms of a complex.
    """

    source: PresentedGroup
    target: PresentedGroup
    slot_pairs: List[Tuple[int, int, int, Homomorphism]]
    group: PresentedGroup
    decomposition: DecomposedGroup

    def rank(self) -> int:
        return len(self.slot_pairs)

    def to_homomorphism(self, coords: Sequence[int]) -> Homomorphism:
        """The homomorphism with the given coordinates in the generators."""
        coords = list(coords)
        if len(coords) != self.rank():
            raise ValueError("coordinate length disagrees with generator count")
        entries = [
            [0] * self.source.ngens for _ in range(self.target.ngens)
        ]
        for x, (_, _, _, gen) in zip(coords, self.slot_pairs):
            if x:
                for r in range(gen.matrix.rows):
                    for c in range(gen.matrix.cols):
                        entries[r][c] += x * gen.matrix[r, c]
        matrix = (
            IntMatrix(entries)
            if self.target.ngens
            else IntMatrix.zeros(0, self.source.ngens)
        )
        return Homomorphism(self.source, self.target, matrix)

    def coordinates(self, hom: Homomorphism) -> Optional[tuple]:
        """Coordinates of a homomorphism in the generators, or None.

        Solves generator combination = hom modulo maps that vanish on the
        target presentation, one stacked system over all source generators.
        """
        if hom.source != self.source or hom.target != self.target:
            raise ValueError("homomorphism connects different groups")
        k = self.rank()
        rel = self.target.rel_hnf
        ncols = k + rel.cols * self.source.ngens
        rows: list = []
        rhs: list = []
        for c in range(self.source.ngens):
            for r in range(self.target.ngens):
                row = [0] * ncols
                for t, (_, _, _, gen) in enumerate(self.slot_pairs):
                    row[t] = gen.matrix[r, c]
                for j in range(rel.cols):
                    row[k + c * rel.cols + j] = rel[r, j]
                rows.append(row)
                rhs.append(hom.matrix[r, c])
        if not rows:
            return ()
        sol = solve_linear(IntMatrix(rows), rhs)
        if sol is None:
            return None
        return tuple(sol[:k])


def hom_group(source: PresentedGroup, target: PresentedGroup) -> HomGroup:
    """All homomorphisms between two finitely generated abelian groups.

    >>> from .groups import AmbientGroup
    >>> hom_group(AmbientGroup(0, (6,)), AmbientGroup(0, (4,))).decomposition
    DecomposedGroup(invariant_factors=(2,))
    """
    a_orders, a_u, a_uinv = source.smith_transform()
    b_orders, b_u, b_uinv = target.smith_transform()
    pairs: List[Tuple[int, int, int, Homomorphism]] = []
    orders: List[int] = []
    for i, a in enumerate(a_orders):
        if a == 1:
            continue
        for j, b in enumerate(b_orders):
            if b == 1:
                continue
            if a != 0 and b == 0:
                continue
            m = math.gcd(a, b)
            if m == 1:
                continue
            lam = b // m if (a and b) else 1
            col = b_uinv.column(j)
            row = a_u.row(i)
            entries = [
                [lam * col[r] * row[c] for c in range(source.ngens)]
                for r in range(target.ngens)
            ]
            matrix = (
                IntMatrix(entries)
                if target.ngens
                else IntMatrix.zeros(0, source.ngens)
            )
            gen = Homomorphism(source, target, matrix)
            if not gen.is_well_defined():
                raise AssertionError("hom generator fails well-definedness")
            pairs.append((i, j, m, gen))
            orders.append(m)
    return HomGroup(
        source=source,
        target=target,
        slot_pairs=pairs,
        group=_diag_presentation(orders),
        decomposition=DecomposedGroup.from_orders(orders),
    )


def induced_precomposition(
    homs_out: HomGroup, homs_in: HomGroup, f: Homomorphism
) -> Homomorphism:
    """Map Hom(A, M) -> Hom(A', M) induced by f: A' -> A, phi -> phi after f."""
    if f.target != homs_out.source or f.source != homs_in.source:
        raise ValueError("composition mismatch")
    if homs_out.target != homs_in.target:
        raise ValueError("hom groups target different modules")
    cols = []
    for _, _, _, gen in homs_out.slot_pairs:
        composed = gen.compose(f)
        coords = homs_in.coordinates(composed)
        if coords is None:
            raise AssertionError("precomposition left the hom group")
        cols.append(coords)
    matrix = IntMatrix.from_columns(cols, rows=homs_in.rank())
    return Homomorphism(homs_out.group, homs_in.group, matrix)


def induced_postcomposition(
    homs_in: HomGroup, homs_out: HomGroup, g: Homomorphism
) -> Homomorphism:
    """Map Hom(A, M) -> Hom(A, M') induced by g: M -> M', phi -> g after phi."""
    if g.source != homs_in.target or g.target != homs_out.target:
        raise ValueError("composition mismatch")
    if homs_in.source != homs_out.source:
        raise ValueError("hom groups have different sources")
    cols = []
    for _, _, _, gen in homs_in.slot_pairs:
        composed = g.compose(gen)
        coords = homs_out.coordinates(composed)
        if coords is None:
            raise AssertionError("postcomposition left the hom group")
        cols.append(coords)
    matrix = IntMatrix.from_columns(cols, rows=homs_out.rank())
    return Homomorphism(homs_in.group, homs_out.group, matrix)


@dataclass
class TensorGroup:
    """Tensor product of two presented groups over the integers.

    Slots pair the Smith slots of the factors; ``pure_tensor`` evaluates
    the bilinear map into the combined presentation.
    """

    left: PresentedGroup
    right: PresentedGroup
    slots: List[Tuple[int, int, int]]
    group: PresentedGroup
    decomposition: DecomposedGroup

    def pure_tensor(self, x: GroupElement, y: GroupElement) -> GroupElement:
        if x.parent != self.left or y.parent != self.right:
            raise ValueError("arguments outside the tensor factors")
        _, u_l, _ = self.left.smith_transform()
        _, u_r, _ = self.right.smith_transform()
        xs = u_l.apply(x.coords)
        ys = u_r.apply(y.coords)
        coords = [xs[i] * ys[j] for i, j, _ in self.slots]
        return self.group.element(coords)


def tensor_group(left: PresentedGroup, right: PresentedGroup) -> TensorGroup:
    """Pairwise tensor of the Smith slots: Z/a x Z/b contributes Z/gcd(a,b).

    >>> from .groups import AmbientGroup
    >>> tensor_group(AmbientGroup(0, (6,)), AmbientGroup(0, (4,))).decomposition
    DecomposedGroup(invariant_factors=(2,))
    """
    a_orders = left.smith_slots()
    b_orders = right.smith_slots()
    slots: List[Tuple[int, int, int]] = []
    orders: List[int] = []
    for i, a in enumerate(a_orders):
        if a == 1:
            continue
        for j, b in enumerate(b_orders):
            if b == 1:
                continue
            m = math.gcd(a, b)
            if m == 1:
                continue
            slots.append((i, j, m))
            orders.append(m)
    return TensorGroup(
        left=left,
        right=right,
        slots=slots,
        group=_diag_presentation(orders),
        decomposition=DecomposedGroup.from_orders(orders),
    )


def _require_free_ambient(family: Sequence[Subgroup]) -> None:
    if not family:
        raise ValueError("family must be non-empty")
    parent = family[0].parent
    if parent.rel_hnf.cols:
        raise ValueError("ambient group must be free")


def _plain_term(degree: int, group: PresentedGroup) -> ComplexTerm:
    return ComplexTerm(
        degree=degree,
        labels=((),),
        summands=[group],
        group=group,
        offsets=[0],
    )


def ext(
    family: Sequence[Subgroup], module: PresentedGroup, through_degree: int
) -> Dict[int, DecomposedGroup]:
    """Ext of the subgroup sum against a module, from the dualized complex.

    The chain complex of the family is a resolution of the sum whenever the
    generated lattice distributes, so applying Hom(-, module) and taking
    cohomology computes Ext in the requested degrees.
    """
    _require_free_ambient(family)
    if through_degree < 0:
        raise ValueError("degree bound must be nonnegative")
    cc = chain_complex(list(family))
    top = max(cc.degrees())
    homs = {q: hom_group(cc.terms[q].group, module) for q in cc.degrees()}
    terms = {q: _plain_term(q, homs[q].group) for q in cc.degrees()}
    diffs: Dict[int, Homomorphism] = {}
    for q in range(top):
        boundary = cc.differential(q + 1)
        diffs[q] = induced_precomposition(homs[q], homs[q + 1], boundary)
    dual = ChainComplex(1, terms, diffs)
    out: Dict[int, DecomposedGroup] = {}
    for q in range(through_degree + 1):
        if q in dual.terms:
            dec, _, _ = homology_at(dual, q)
            out[q] = dec
        else:
            out[q] = DecomposedGroup()
    return out


def tor(
    family: Sequence[Subgroup], module: PresentedGroup, through_degree: int
) -> Dict[int, DecomposedGroup]:
    """Tor of the subgroup sum against a module, from the tensored complex.

    Tensoring with each cyclic Smith slot of the module just augments every
    term's relations by the slot order; homology is computed per slot and
    the slots are summed.
    """
    _require_free_ambient(family)
    if through_degree < 0:
        raise ValueError("degree bound must be nonnegative")
    cc = chain_complex(list(family))
    slot_orders = [o for o in module.smith_slots() if o != 1]
    out: Dict[int, DecomposedGroup] = {
        q: DecomposedGroup() for q in range(through_degree + 1)
    }
    for b in slot_orders:
        terms: Dict[int, ComplexTerm] = {}
        for q in cc.degrees():
            base = cc.terms[q].group
            cols = list(base.rel_hnf.columns())
            if b:
                for i in range(base.ngens):
                    col = [0] * base.ngens
                    col[i] = b
                    cols.append(col)
            tensored = PresentedGroup(
                base.ngens, IntMatrix.from_columns(cols, rows=base.ngens)
            )
            terms[q] = _plain_term(q, tensored)
        diffs: Dict[int, Homomorphism] = {}
        for q in cc.degrees():
            boundary = cc.differential(q)
            if boundary is not None:
                diffs[q] = Homomorphism(
                    terms[q].group, terms[q - 1].group, boundary.matrix
                )
        sliced = ChainComplex(-1, terms, diffs)
        for q in range(through_degree + 1):
            if q in sliced.terms:
                dec, _, _ = homology_at(sliced, q)
                merged = out[q].direct_sum(dec)
                out[q] = merged
    return out
