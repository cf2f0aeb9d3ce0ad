"""Chain and cochain complexes attached to finite families of subgroups.

The degree-q term of the chain complex is the direct sum over strictly
increasing (q+1)-tuples of the intersections of the chosen subgroups; the
cochain term uses sums instead.  Differentials are alternating sums of
inclusions with the standard simplicial sign: omitting position p carries
sign (-1)^p.  Both square-to-zero and well-definedness are asserted when a
complex is built, so downstream homology can trust its input.

Homology in each degree is computed on presentations: the kernel becomes a
sublattice of the term's free cover, the image plus the term's relations
are rewritten in kernel coordinates, and Smith reduction of that quotient
yields invariant factors together with explicit representing (co)cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .groups import (
    DecomposedGroup,
    GroupElement,
    Homomorphism,
    PresentedGroup,
    Subgroup,
    intersection_of,
    sum_of,
)
from .intmatrix import (
    HnfSolver,
    IntMatrix,
    hnf,
    inverse_unimodular,
    kernel_basis,
    snf,
    solve_linear,
    strip_zero_columns,
)


@dataclass
class ComplexTerm:
    """One graded piece: a direct sum of presented groups with labels.

    ``labels[k]`` is the strictly increasing index tuple of summand k and
    ``offsets[k]`` its first generator inside the combined presentation.
    ``subgroups`` is set when the summands are subgroups of a common
    ambient group, enabling translation back to ambient coordinates.
    """

    degree: int
    labels: tuple
    summands: list
    group: PresentedGroup
    offsets: list
    subgroups: Optional[list] = None

    def summand_index(self, label: tuple) -> int:
        return self.labels.index(label)

    def component_coords(self, coords: Sequence[int], k: int) -> tuple:
        lo = self.offsets[k]
        hi = lo + self.summands[k].ngens
        return tuple(coords[lo:hi])

    def split(self, element: GroupElement) -> list:
        return [
            self.component_coords(element.coords, k)
            for k in range(len(self.summands))
        ]

    def component_elements(self, element: GroupElement) -> list:
        """Per-summand values of ``element`` in ambient coordinates."""
        if self.subgroups is None:
            raise ValueError("term has no ambient embedding")
        out = []
        for k, sub in enumerate(self.subgroups):
            coeffs = self.component_coords(element.coords, k)
            out.append(sub.parent.element(sub.basis.apply(coeffs)))
        return out

    def inject(self, k: int, coeffs: Sequence[int]) -> GroupElement:
        """Element of the term supported on summand k."""
        coords = [0] * self.group.ngens
        lo = self.offsets[k]
        for i, v in enumerate(coeffs):
            coords[lo + i] = v
        return self.group.element(coords)

    def order(self) -> Optional[int]:
        return self.group.order()


def _direct_sum(summands: Sequence[PresentedGroup]) -> tuple:
    ngens = sum(g.ngens for g in summands)
    offsets = []
    at = 0
    cols = []
    for g in summands:
        offsets.append(at)
        for c in g.rel_hnf.columns():
            col = [0] * ngens
            for i, v in enumerate(c):
                col[at + i] = v
            cols.append(col)
        at += g.ngens
    return PresentedGroup(ngens, IntMatrix.from_columns(cols, rows=ngens)), offsets


def _make_term(degree: int, labels: Sequence[tuple], subgroups: Sequence[Subgroup]) -> ComplexTerm:
    summands = [s.as_group for s in subgroups]
    group, offsets = _direct_sum(summands)
    return ComplexTerm(
        degree=degree,
        labels=tuple(tuple(l) for l in labels),
        summands=summands,
        group=group,
        offsets=offsets,
        subgroups=list(subgroups),
    )


def _inclusion_block(src: Subgroup, dst: Subgroup) -> IntMatrix:
    """Matrix of the inclusion of one subgroup into a larger one.

    Columns rewrite each basis generator of the source in the basis of the
    destination; existence is exactly the containment being claimed.
    """
    cols = []
    for c in src.basis.columns():
        sol = dst.solver.solve(c)
        if sol is None:
            raise AssertionError("inclusion block requested for a non-subgroup")
        cols.append(sol)
    return IntMatrix.from_columns(cols, rows=dst.basis.cols)


def _assemble(
    source: ComplexTerm,
    target: ComplexTerm,
    blocks: Sequence[tuple],
) -> Homomorphism:
    """Block map between direct-sum terms; blocks are (t_idx, s_idx, sign, matrix)."""
    entries = [[0] * source.group.ngens for _ in range(target.group.ngens)]
    for t_idx, s_idx, sign, block in blocks:
        r0 = target.offsets[t_idx]
        c0 = source.offsets[s_idx]
        for i in range(block.rows):
            for j in range(block.cols):
                if block[i, j]:
                    entries[r0 + i][c0 + j] += sign * block[i, j]
    matrix = IntMatrix(entries) if entries else IntMatrix.zeros(0, source.group.ngens)
    return Homomorphism(source.group, target.group, matrix)


class ChainComplex:
    """A finite complex of presented groups with square-zero differentials.

    ``direction`` is -1 when differentials lower degree and +1 when they
    raise it.  ``differentials`` is keyed by source degree.  Validity (each
    map well defined on presentations, consecutive composites zero) is
    asserted at construction and never rechecked.
    """

    def __init__(self, direction: int, terms: Dict[int, ComplexTerm], differentials: Dict[int, Homomorphism]):
        if direction not in (-1, 1):
            raise ValueError("direction must be -1 or +1")
        self.direction = direction
        self.terms = dict(terms)
        self.differentials = dict(differentials)
        self._validate()

    def degrees(self) -> list:
        return sorted(self.terms)

    def differential(self, q: int) -> Optional[Homomorphism]:
        return self.differentials.get(q)

    def _validate(self) -> None:
        for q, d in self.differentials.items():
            if d.source != self.terms[q].group:
                raise AssertionError("differential source presentation mismatch")
            if d.target != self.terms[q + self.direction].group:
                raise AssertionError("differential target presentation mismatch")
            if not d.is_well_defined():
                raise AssertionError(f"differential at degree {q} is not well defined")
        for q, d in self.differentials.items():
            nxt = self.differentials.get(q + self.direction)
            if nxt is not None and not nxt.compose(d).is_zero_map():
                raise AssertionError(f"composite differential at degree {q} is nonzero")


def _check_family(family: Sequence[Subgroup]) -> PresentedGroup:
    if not family:
        raise ValueError("family must be non-empty")
    parent = family[0].parent
    for s in family[1:]:
        if s.parent != parent:
            raise ValueError("family members live in different groups")
    return parent


def chain_complex(family: Sequence[Subgroup], augment: bool = False) -> ChainComplex:
    """Complex of intersections over increasing tuples, boundary lowering degree.

    The component of the boundary at a (q+1)-tuple sends it into each tuple
    with one index omitted, with sign (-1)^p for omitted position p.  With
    ``augment`` a degree -1 term holding the sum of the family is added,
    the boundary out of degree 0 being the plain sum of inclusions.
    """
    _check_family(family)
    n = len(family) - 1
    terms: Dict[int, ComplexTerm] = {}
    for q in range(n + 1):
        labels = list(combinations(range(n + 1), q + 1))
        subs = [intersection_of([family[i] for i in lab]) for lab in labels]
        terms[q] = _make_term(q, labels, subs)
    diffs: Dict[int, Homomorphism] = {}
    for q in range(1, n + 1):
        src, dst = terms[q], terms[q - 1]
        blocks = []
        for s_idx, lab in enumerate(src.labels):
            for p in range(len(lab)):
                shorter = lab[:p] + lab[p + 1 :]
                t_idx = dst.summand_index(shorter)
                block = _inclusion_block(src.subgroups[s_idx], dst.subgroups[t_idx])
                blocks.append((t_idx, s_idx, (-1) ** p, block))
        diffs[q] = _assemble(src, dst, blocks)
    if augment:
        total = sum_of(list(family))
        aug_term = _make_term(-1, [()], [total])
        terms[-1] = aug_term
        src = terms[0]
        blocks = []
        for s_idx in range(len(src.labels)):
            block = _inclusion_block(src.subgroups[s_idx], total)
            blocks.append((0, s_idx, 1, block))
        diffs[0] = _assemble(src, aug_term, blocks)
    return ChainComplex(-1, terms, diffs)


def cochain_complex(family: Sequence[Subgroup], augment: bool = False) -> ChainComplex:
    """Complex of sums over increasing tuples, coboundary raising degree.

    The coboundary component at a (q+2)-tuple is the alternating sum of the
    components with one index omitted, included into the larger sum.  With
    ``augment`` a degree -1 term holding the intersection of the family is
    added, mapping diagonally into degree 0.
    """
    _check_family(family)
    n = len(family) - 1
    terms: Dict[int, ComplexTerm] = {}
    for q in range(n + 1):
        labels = list(combinations(range(n + 1), q + 1))
        subs = [sum_of([family[i] for i in lab]) for lab in labels]
        terms[q] = _make_term(q, labels, subs)
    diffs: Dict[int, Homomorphism] = {}
    for q in range(n):
        src, dst = terms[q], terms[q + 1]
        blocks = []
        for t_idx, lab in enumerate(dst.labels):
            for p in range(len(lab)):
                shorter = lab[:p] + lab[p + 1 :]
                s_idx = src.summand_index(shorter)
                block = _inclusion_block(src.subgroups[s_idx], dst.subgroups[t_idx])
                blocks.append((t_idx, s_idx, (-1) ** p, block))
        diffs[q] = _assemble(src, dst, blocks)
    if augment:
        total = intersection_of(list(family))
        aug_term = _make_term(-1, [()], [total])
        terms[-1] = aug_term
        dst = terms[0]
        blocks = []
        for t_idx in range(len(dst.labels)):
            block = _inclusion_block(total, dst.subgroups[t_idx])
            blocks.append((t_idx, 0, 1, block))
        diffs[-1] = _assemble(aug_term, dst, blocks)
    return ChainComplex(1, terms, diffs)


def complex_from_groups(
    direction: int,
    groups_by_degree: Dict[int, Tuple[Sequence[tuple], Sequence[PresentedGroup]]],
    block_fn: Callable[[tuple, tuple], IntMatrix],
) -> ChainComplex:
    """Generic builder for alternating complexes on increasing tuples.

    ``groups_by_degree`` maps a degree to its (labels, summands); blocks
    between a shorter and a longer label come from ``block_fn``.  Used for
    complexes whose summands are not subgroups of the ambient group.
    """
    terms: Dict[int, ComplexTerm] = {}
    for q, (labels, summands) in groups_by_degree.items():
        group, offsets = _direct_sum(list(summands))
        terms[q] = ComplexTerm(
            degree=q,
            labels=tuple(tuple(l) for l in labels),
            summands=list(summands),
            group=group,
            offsets=offsets,
        )
    diffs: Dict[int, Homomorphism] = {}
    for q in sorted(terms):
        nxt = q + direction
        if nxt not in terms:
            continue
        src = terms[q]
        dst = terms[nxt]
        blocks = []
        long_term, short_term = (src, dst) if direction < 0 else (dst, src)
        for l_idx, lab in enumerate(long_term.labels):
            for p in range(len(lab)):
                shorter = lab[:p] + lab[p + 1 :]
                s_idx = short_term.summand_index(shorter)
                block = block_fn(shorter, lab)
                sign = (-1) ** p
                if direction < 0:
                    blocks.append((s_idx, l_idx, sign, block))
                else:
                    blocks.append((l_idx, s_idx, sign, block))
        diffs[q] = _assemble(src, dst, blocks)
    return ChainComplex(direction, terms, diffs)


@dataclass
class HomologyResult:
    """Invariant factors per degree with generating (co)cycles.

    ``representatives[q]`` lists (element, order) pairs, order 0 meaning
    infinite; ``kernels[q]`` is the canonical basis of the cycle lattice
    inside the free cover of the degree-q term.
    """

    by_degree: Dict[int, DecomposedGroup] = field(default_factory=dict)
    representatives: Dict[int, list] = field(default_factory=dict)
    kernels: Dict[int, IntMatrix] = field(default_factory=dict)

    def decomposition(self, q: int) -> DecomposedGroup:
        return self.by_degree.get(q, DecomposedGroup())

    def is_trivial(self, q: int) -> bool:
        return self.decomposition(q).is_trivial


def _cycle_lattice(cx: ChainComplex, q: int) -> IntMatrix:
    term = cx.terms[q]
    out = cx.differential(q)
    if out is None:
        return IntMatrix.identity(term.group.ngens)
    target_rel = cx.terms[q + cx.direction].group.rel_hnf
    stacked = out.matrix.hstack(target_rel)
    ker = kernel_basis(stacked)
    top = ker.take_rows(range(term.group.ngens))
    return strip_zero_columns(hnf(top, transform=False))


def homology_at(cx: ChainComplex, q: int) -> tuple:
    """Kernel-mod-image at one degree: (decomposition, representatives, kernel)."""
    term = cx.terms[q]
    kernel = _cycle_lattice(cx, q)
    solver = HnfSolver(kernel)
    denom_cols = []
    incoming = cx.differential(q - cx.direction)
    if incoming is not None:
        denom_cols.extend(incoming.matrix.columns())
    denom_cols.extend(term.group.rel_hnf.columns())
    coeffs = []
    for col in denom_cols:
        sol = solver.solve(col)
        if sol is None:
            raise AssertionError("boundary escaped the cycle lattice")
        coeffs.append(sol)
    relmat = IntMatrix.from_columns(coeffs, rows=kernel.cols)
    if relmat.cols == 0:
        orders = [0] * kernel.cols
        uinv = IntMatrix.identity(kernel.cols)
    else:
        S, U, _ = snf(relmat)
        limit = min(relmat.rows, relmat.cols)
        orders = [S[i, i] if i < limit else 0 for i in range(kernel.cols)]
        uinv = inverse_unimodular(U)
    finite = tuple(o for o in orders if o >= 2)
    free = sum(1 for o in orders if o == 0)
    dec = DecomposedGroup(finite + (0,) * free)
    reps = []
    for i, o in enumerate(orders):
        if o == 1:
            continue
        coords = kernel.apply(uinv.column(i))
        reps.append((term.group.element(coords), o))
    return dec, reps, kernel


def homology(cx: ChainComplex) -> HomologyResult:
    result = HomologyResult()
    for q in cx.degrees():
        dec, reps, kernel = homology_at(cx, q)
        result.by_degree[q] = dec
        result.representatives[q] = reps
        result.kernels[q] = kernel
    return result


def is_cycle(cx: ChainComplex, q: int, element: GroupElement) -> bool:
    out = cx.differential(q)
    if out is None:
        return True
    return out.apply(element).is_zero()


def is_boundary(cx: ChainComplex, q: int, element: GroupElement) -> bool:
    """Whether the element lies in the image of the incoming differential."""
    term = cx.terms[q]
    incoming = cx.differential(q - cx.direction)
    if incoming is None:
        return not any(element.coords)
    stacked = incoming.matrix.hstack(term.group.rel_hnf)
    return solve_linear(stacked, element.coords) is not None


def h1_witness(i0: Subgroup, i1: Subgroup, i2: Subgroup) -> Optional[list]:
    """A 1-cocycle on three subgroups representing a nonzero class, if any.

    Returns ambient values ordered by pair label (0,1), (0,2), (1,2), or
    None when the first cohomology vanishes.  The returned cocycle is
    re-verified to not be a coboundary before being handed out.
    """
    cx = cochain_complex([i0, i1, i2])
    dec, reps, _ = homology_at(cx, 1)
    if dec.is_trivial:
        return None
    element, _order = reps[0]
    if is_boundary(cx, 1, element):
        raise AssertionError("homology representative with nonzero class is a coboundary")
    if not is_cycle(cx, 1, element):
        raise AssertionError("homology representative is not a cocycle")
    return cx.terms[1].component_elements(element)
