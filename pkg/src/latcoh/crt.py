"""Simultaneous congruences with non-coprime moduli, solved constructively.

A residue system prescribes one coset a_alpha + I_alpha per modulus
subgroup.  Pairwise compatibility (a_beta - a_alpha in I_alpha + I_beta) is
necessary for a common solution; it is sufficient exactly when the first
cohomology of the modulus family vanishes, which in turn holds whenever the
generated subgroup lattice is distributive.  The solver therefore has three
outcomes: a verified solution, a failing pair, or a cocycle certificate
demonstrating that compatibility does not lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .complexes import cochain_complex, homology_at, is_boundary, is_cycle
from .groups import (
    GroupElement,
    PresentedGroup,
    Subgroup,
    intersection_of,
    sub_sum,
)
from .intmatrix import HnfSolver, IntMatrix, solve_linear


@dataclass
class ResidueSystem:
    """Moduli I_alpha with chosen representatives a_alpha, shared parent."""

    moduli: List[Subgroup]
    representatives: List[GroupElement]

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("need at least one modulus")
        if len(self.moduli) != len(self.representatives):
            raise ValueError("one representative per modulus required")
        parent = self.moduli[0].parent
        for m in self.moduli:
            if m.parent != parent:
                raise ValueError("moduli live in different groups")
        for a in self.representatives:
            if a.parent != parent:
                raise ValueError("representative outside the ambient group")

    @property
    def parent(self) -> PresentedGroup:
        return self.moduli[0].parent


@dataclass
class CrtOutcome:
    """Result of a congruence solve.

    ``solution`` is a raw ambient representative; ``solution_class`` is the
    same element reduced against the canonical basis of the intersection of
    the moduli, i.e. the canonical label of the solution coset.
    """

    status: str
    solution: Optional[GroupElement] = None
    solution_class: Optional[GroupElement] = None
    intersection: Optional[Subgroup] = None
    incompatibility: Optional[Tuple[int, int]] = None
    certificate: Optional[list] = None


def compatible(system: ResidueSystem) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Pairwise solvability test: a_beta - a_alpha in I_alpha + I_beta.

    Returns the first failing index pair in lexicographic order, if any.
    """
    n = len(system.moduli)
    for alpha, beta in combinations(range(n), 2):
        diff = system.representatives[beta] - system.representatives[alpha]
        if not sub_sum(system.moduli[alpha], system.moduli[beta]).contains(diff):
            return False, (alpha, beta)
    return True, None


def _certificate(system: ResidueSystem) -> list:
    """The pairwise difference cocycle, in lexicographic pair order."""
    out = []
    for alpha, beta in combinations(range(len(system.moduli)), 2):
        out.append(system.representatives[beta] - system.representatives[alpha])
    return out


def crt_solve(system: ResidueSystem) -> CrtOutcome:
    """Find a single element congruent to every representative, if one exists.

    After the compatibility screen, the correction elements i_alpha in
    I_alpha with a_beta - a_alpha = i_beta - i_alpha are found by one
    stacked integer solve over the free cover (unknowns: basis coefficients
    of every modulus, plus a relation-lattice slack per pair).  A returned
    solution is asserted to satisfy every congruence.

    >>> from .groups import AmbientGroup, subgroup_from_generators
    >>> z = AmbientGroup(1)
    >>> sys35 = ResidueSystem(
    ...     [subgroup_from_generators(z, [[3]]), subgroup_from_generators(z, [[5]])],
    ...     [z.element([2]), z.element([3])])
    >>> out = crt_solve(sys35)
    >>> out.status, out.solution_class.coords
    ('solved', (8,))
    """
    ok, pair = compatible(system)
    if not ok:
        return CrtOutcome(status="incompatible", incompatibility=pair)

    parent = system.parent
    moduli = system.moduli
    n_amb = parent.ngens
    rel = parent.rel_hnf
    pairs = list(combinations(range(len(moduli)), 2))
    widths = [m.basis.cols for m in moduli]
    offsets = []
    at = 0
    for w in widths:
        offsets.append(at)
        at += w
    slack_base = at
    total_cols = at + rel.cols * len(pairs)

    rows: list = []
    rhs: list = []
    for p_idx, (alpha, beta) in enumerate(pairs):
        target = [
            b - a
            for a, b in zip(
                system.representatives[alpha].coords,
                system.representatives[beta].coords,
            )
        ]
        for r in range(n_amb):
            row = [0] * total_cols
            for j in range(widths[beta]):
                row[offsets[beta] + j] += moduli[beta].basis[r, j]
            for j in range(widths[alpha]):
                row[offsets[alpha] + j] -= moduli[alpha].basis[r, j]
            for j in range(rel.cols):
                row[slack_base + p_idx * rel.cols + j] = rel[r, j]
            rows.append(row)
            rhs.append(target[r])

    inter = intersection_of(moduli)
    if rows:
        matrix = IntMatrix(rows)
        sol = solve_linear(matrix, rhs)
    else:
        sol = (0,) * total_cols
    if sol is None:
        return CrtOutcome(
            status="no_solution",
            intersection=inter,
            certificate=_certificate(system),
        )

    c0 = sol[offsets[0] : offsets[0] + widths[0]]
    i0 = moduli[0].basis.apply(c0)
    a = parent.element(
        [av - iv for av, iv in zip(system.representatives[0].coords, i0)]
    )
    for alpha, m in enumerate(moduli):
        if not m.contains(a - system.representatives[alpha]):
            raise AssertionError("solver produced an element violating a congruence")
    a_class = parent.element(HnfSolver(inter.basis).reduce(a.coords))
    return CrtOutcome(
        status="solved", solution=a, solution_class=a_class, intersection=inter
    )


def certificate_cocycle_element(family: Sequence[Subgroup], certificate: Sequence[GroupElement]):
    """Rebuild a certificate as an element of the degree-1 cochain term.

    Returns the pair (complex, element) so callers can confirm the
    certificate is a cocycle and not a coboundary.
    """
    cx = cochain_complex(list(family))
    term = cx.terms[1]
    coords = [0] * term.group.ngens
    for k, value in enumerate(certificate):
        coeffs = term.subgroups[k].express(value)
        if coeffs is None:
            raise ValueError("certificate component outside its pair sum")
        lo = term.offsets[k]
        for i, v in enumerate(coeffs):
            coords[lo + i] = v
    return cx, term.group.element(coords)


def verify_certificate(family: Sequence[Subgroup], certificate: Sequence[GroupElement]) -> bool:
    """True when the certificate is a nontrivial 1-cocycle of the family."""
    cx, element = certificate_cocycle_element(family, certificate)
    return is_cycle(cx, 1, element) and not is_boundary(cx, 1, element)


def equalizer_check(
    family: Sequence[Subgroup],
) -> Tuple[bool, Optional[ResidueSystem]]:
    """Whether every pairwise-compatible residue system on the family lifts.

    Equivalent to vanishing of the family's first cohomology: a compatible
    system is exactly a 1-cocycle of pairwise differences, and it lifts
    exactly when that cocycle bounds.  On failure the witness system built
    from a nonvanishing class is returned, and is re-checked to be
    compatible yet unsolvable.
    """
    family = list(family)
    if not family:
        raise ValueError("need at least one modulus")
    if len(family) == 1:
        return True, None
    cx = cochain_complex(family)
    dec, reps, _ = homology_at(cx, 1)
    if dec.is_trivial:
        return True, None
    element, _order = reps[0]
    values = cx.terms[1].component_elements(element)
    pair_index = {
        lab: k for k, lab in enumerate(cx.terms[1].labels)
    }
    parent = family[0].parent
    residues = [parent.zero()]
    for beta in range(1, len(family)):
        residues.append(values[pair_index[(0, beta)]])
    system = ResidueSystem(family, residues)
    ok, _ = compatible(system)
    if not ok:
        raise AssertionError("cocycle-derived residue system must be compatible")
    outcome = crt_solve(system)
    if outcome.status != "no_solution":
        raise AssertionError("nonvanishing class produced a solvable system")
    return False, system
