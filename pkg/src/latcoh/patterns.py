"""Cech-style cohomology of finite closed coverings with three value rules.

Closed sets are bare indices 0..n; only which tuples index which subgroup
sums matters.  A pattern assigns to each increasing tuple either the
ambient group (constant flavor), the sum of the chosen subgroups (ideal
flavor), or the ambient modulo that sum (quotient flavor).  All three
complexes share the alternating coboundary; the ideal flavor is literally
the subgroup cochain complex, the other two use identity blocks between
presentations on the same free cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence

from .complexes import (
    ChainComplex,
    cochain_complex,
    complex_from_groups,
    homology,
    homology_at,
)
from .crt import equalizer_check
from .groups import (
    DecomposedGroup,
    PresentedGroup,
    Subgroup,
    intersection_of,
    sub_intersect,
    sub_sum,
    sum_of,
)
from .intmatrix import IntMatrix
from .lattice import LatticeClosure

FLAVORS = ("constant", "ideal", "quotient")


@dataclass
class PatternAssignment:
    """A covering by n+1 abstract closed sets with a value rule on tuples.

    ``family`` is required for the ideal and quotient flavors and gives the
    single-set values; tuple values are sums of the selected members.  The
    constant flavor needs only the ambient group and the covering size.
    """

    flavor: str
    ambient: PresentedGroup
    family: Optional[List[Subgroup]] = None
    covering_size: Optional[int] = None

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.flavor == "constant":
            if self.covering_size is None and self.family is not None:
                self.covering_size = len(self.family)
            if not self.covering_size or self.covering_size < 1:
                raise ValueError("constant flavor needs a positive covering size")
        else:
            if not self.family:
                raise ValueError(f"{self.flavor} flavor needs a subgroup family")
            for s in self.family:
                if s.parent != self.ambient:
                    raise ValueError("family members must live in the ambient group")
            self.covering_size = len(self.family)

    @property
    def size(self) -> int:
        return self.covering_size

    def tuple_value(self, label: Sequence[int]) -> Subgroup:
        """Value on the intersection of the closed sets named by ``label``."""
        if self.flavor == "constant":
            raise ValueError("constant flavor has no subgroup values")
        return sum_of([self.family[i] for i in label])


@dataclass
class PatternCohomologyResult:
    by_degree: Dict[int, DecomposedGroup]

    def decomposition(self, q: int) -> DecomposedGroup:
        return self.by_degree.get(q, DecomposedGroup())


def pattern_complex(pattern: PatternAssignment) -> ChainComplex:
    """The covering complex realising the pattern's values on tuples."""
    n = pattern.size - 1
    if pattern.flavor == "ideal":
        return cochain_complex(pattern.family)
    labels_by_degree = {
        q: list(combinations(range(n + 1), q + 1)) for q in range(n + 1)
    }
    namb = pattern.ambient.ngens
    if pattern.flavor == "constant":
        groups = {
            q: (labels, [pattern.ambient for _ in labels])
            for q, labels in labels_by_degree.items()
        }
    else:
        groups = {
            q: (
                labels,
                [
                    PresentedGroup(namb, pattern.tuple_value(lab).basis)
                    for lab in labels
                ],
            )
            for q, labels in labels_by_degree.items()
        }
    identity = IntMatrix.identity(namb)
    return complex_from_groups(1, groups, lambda short, long: identity)


def pattern_cohomology(pattern: PatternAssignment) -> PatternCohomologyResult:
    """Cohomology of the covering complex, by degree.

    >>> from .groups import AmbientGroup
    >>> a = AmbientGroup(0, (6,))
    >>> res = pattern_cohomology(PatternAssignment("constant", a, covering_size=3))
    >>> [str(res.decomposition(q)) for q in range(3)]
    ['Z/6', '0', '0']
    """
    cx = pattern_complex(pattern)
    h = homology(cx)
    return PatternCohomologyResult(by_degree=dict(h.by_degree))


@dataclass
class GluingReport:
    """Itemised verdict of the unique-gluing check for an ideal pattern."""

    holds: bool
    h0_matches_union_value: bool
    condition_intersect: bool
    condition_union: bool
    equalizer: bool
    counterexample: Optional[object] = None


def _h0_is_union_value(family: Sequence[Subgroup]) -> bool:
    """Degree-0 cohomology must be the constant copies of the intersection."""
    cx = cochain_complex(list(family))
    dec, reps, kernel = homology_at(cx, 0)
    inter = intersection_of(list(family))
    if dec != inter.as_group.decomposition:
        return False
    term = cx.terms[0]
    parent = family[0].parent
    # every kernel generator is a constant tuple; its value lies in the
    # intersection, and the values of all generators span exactly it
    values = []
    for col in kernel.columns():
        comps = [
            parent.element(sub.basis.apply(term.component_coords(col, k)))
            for k, sub in enumerate(term.subgroups)
        ]
        if any(c != comps[0] for c in comps[1:]):
            return False
        values.append(comps[0])
    from .groups import subgroup_from_generators

    spanned = subgroup_from_generators(parent, values)
    return spanned == inter


def _condition_intersect(pattern: PatternAssignment) -> bool:
    """Tuple values must be the sums of the singleton values."""
    n = pattern.size - 1
    for q in range(n + 1):
        for lab in combinations(range(n + 1), q + 1):
            direct = pattern.tuple_value(lab)
            stepwise = sum_of([pattern.tuple_value((i,)) for i in lab])
            if direct != stepwise:
                return False
    return True


def _condition_union(pattern: PatternAssignment, closure_lattice: LatticeClosure) -> bool:
    """Union values must land in the closure and evaluate consistently.

    The value on a union of closed sets is the intersection of values; the
    covering is consistent when evaluating a mixed set two ways agrees,
    i.e. (I_i + I_k) cap (I_j + I_k) = (I_i cap I_j) + I_k for all triples.
    """
    fam = pattern.family
    members = set(closure_lattice.members)
    for i, j in combinations(range(len(fam)), 2):
        if sub_intersect(fam[i], fam[j]) not in members:
            return False
    for i, j, k in permutations(range(len(fam)), 3):
        lhs = sub_intersect(sub_sum(fam[i], fam[k]), sub_sum(fam[j], fam[k]))
        rhs = sub_sum(sub_intersect(fam[i], fam[j]), fam[k])
        if lhs != rhs:
            return False
    return True


def gluing_check(pattern: PatternAssignment, closure_lattice: LatticeClosure) -> GluingReport:
    """Verify the unique-gluing contract of an ideal pattern on its covering.

    Four independently reported checks: degree-0 cohomology equals the
    union value (constant tuples spanning the intersection), the
    (intersect) and (union) evaluation rules, and the quotient-side
    equalizer, which contributes a counterexample residue system when it
    fails.
    """
    if pattern.flavor != "ideal":
        raise ValueError("gluing check applies to ideal patterns")
    h0_ok = _h0_is_union_value(pattern.family)
    ci = _condition_intersect(pattern)
    cu = _condition_union(pattern, closure_lattice)
    eq_ok, counterexample = equalizer_check(pattern.family)
    return GluingReport(
        holds=h0_ok and ci and cu and eq_ok,
        h0_matches_union_value=h0_ok,
        condition_intersect=ci,
        condition_union=cu,
        equalizer=eq_ok,
        counterexample=counterexample,
    )


def _order_products(cx: ChainComplex) -> tuple:
    """(even, odd) degree order products of the terms; None if infinite."""
    even = odd = 1
    for q in cx.degrees():
        o = cx.terms[q].group.order()
        if o is None:
            return None, None
        if q % 2 == 0:
            even *= o
        else:
            odd *= o
    return even, odd


def _homology_products(cx: ChainComplex) -> tuple:
    even = odd = 1
    h = homology(cx)
    for q, dec in h.by_degree.items():
        o = dec.order()
        if o is None:
            return None, None
        if q % 2 == 0:
            even *= o
        else:
            odd *= o
    return even, odd


def euler_consistency(ambient: PresentedGroup, family: Sequence[Subgroup]) -> bool:
    """Order bookkeeping across the constant, ideal and quotient complexes.

    Degreewise the constant term order is the product of the other two, and
    the alternating order products agree between each complex and its
    cohomology, and multiplicatively across the three complexes.  Finite
    ambient groups only.
    """
    if ambient.order() is None:
        raise ValueError("euler bookkeeping needs a finite ambient group")
    family = list(family)
    for s in family:
        if s.parent != ambient:
            raise ValueError("family members must live in the ambient group")
    pats = {
        flavor: PatternAssignment(flavor, ambient, family=family)
        for flavor in FLAVORS
    }
    cxs = {flavor: pattern_complex(p) for flavor, p in pats.items()}
    for q in cxs["constant"].degrees():
        oc = cxs["constant"].terms[q].group.order()
        oi = cxs["ideal"].terms[q].group.order()
        oq = cxs["quotient"].terms[q].group.order()
        if oc != oi * oq:
            return False
    term_even = {}
    term_odd = {}
    hom_even = {}
    hom_odd = {}
    for flavor, cx in cxs.items():
        te, to = _order_products(cx)
        he, ho = _homology_products(cx)
        # Euler characteristic through orders: terms and homology agree
        if te * ho != to * he:
            return False
        term_even[flavor], term_odd[flavor] = te, to
        hom_even[flavor], hom_odd[flavor] = he, ho
    lhs = hom_even["constant"] * hom_odd["ideal"] * hom_odd["quotient"]
    rhs = hom_odd["constant"] * hom_even["ideal"] * hom_even["quotient"]
    return lhs == rhs
