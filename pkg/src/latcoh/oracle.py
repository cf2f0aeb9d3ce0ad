"""Brute-force recomputation paths used to cross-check the exact algebra.

Everything here works by explicit element enumeration: groups are walked
breadth-first from their generators using only canonical coordinate
reduction, quotient structures are recovered by counting p-power kernels,
and witnesses are replayed against element sets.  Nothing in this module
consults the normal-form machinery beyond coordinate reduction, so
agreement with the main pipeline is meaningful evidence.
"""

from __future__ import annotations

import math
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .complexes import ChainComplex
from .crt import ResidueSystem
from .groups import DecomposedGroup, GroupElement, PresentedGroup, Subgroup

DEFAULT_LIMIT = 200000


def _reduce_sum(group: PresentedGroup, x: tuple, y: tuple) -> tuple:
    return group.reduce([a + b for a, b in zip(x, y)])


def span_elements(
    group: PresentedGroup,
    generators: Iterable[Sequence[int]],
    limit: int = DEFAULT_LIMIT,
) -> Set[tuple]:
    """All sums of the generators, as canonical coordinate tuples.

    Breadth-first closure under addition; in a finite group this is the
    generated subgroup.  Raises when the closure exceeds ``limit``.
    """
    gens = [group.reduce(g) for g in generators]
    zero = (0,) * group.ngens
    seen = {zero}
    frontier = [zero]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = _reduce_sum(group, x, g)
                if y not in seen:
                    if len(seen) >= limit:
                        raise ValueError(f"enumeration exceeded limit {limit}")
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return seen


def enumerate_elements(group: PresentedGroup, limit: int = DEFAULT_LIMIT) -> List[tuple]:
    """Every element of a finite presented group, in a deterministic order."""
    gens = [
        tuple(1 if j == i else 0 for j in range(group.ngens))
        for i in range(group.ngens)
    ]
    return sorted(span_elements(group, gens, limit))


def subgroup_elements(sub: Subgroup, limit: int = DEFAULT_LIMIT) -> Set[tuple]:
    return span_elements(sub.parent, sub.basis.columns(), limit)


def _scalar(group: PresentedGroup, k: int, x: tuple) -> tuple:
    return group.reduce([k * v for v in x])


def quotient_invariants(
    group: PresentedGroup,
    kernel: Set[tuple],
    image: Set[tuple],
) -> DecomposedGroup:
    """Invariant factors of kernel/image recovered by p-power counting.

    For each prime p dividing the quotient order, the number of elements
    killed by p^k determines how many cyclic p-factors have exponent at
    least k; the partitions are then merged across primes.
    """
    if len(kernel) % len(image):
        raise ValueError("image does not evenly divide the kernel")
    order = len(kernel) // len(image)
    if order == 1:
        return DecomposedGroup()
    partitions: Dict[int, List[int]] = {}
    rest = order
    p = 2
    primes = []
    while rest > 1:
        if p * p > rest:
            primes.append(rest)
            break
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    for p in primes:
        counts = [len(image)]
        k = 1
        while True:
            c = sum(1 for x in kernel if _scalar(group, p**k, x) in image)
            counts.append(c)
            if c == counts[k - 1]:
                break
            k += 1
        ranks = []
        for k in range(1, len(counts)):
            ratio = counts[k] // counts[k - 1]
            ranks.append(round(math.log(ratio, p)))
        # conjugate partition: part m is the count of levels with rank >= m
        parts = []
        m = 1
        while True:
            lam = sum(1 for r in ranks if r >= m)
            if lam == 0:
                break
            parts.append(lam)
            m += 1
        partitions[p] = sorted(parts, reverse=True)
    width = max(len(v) for v in partitions.values())
    factors = []
    for s in range(width):
        d = 1
        for p, parts in partitions.items():
            if s < len(parts):
                d *= p ** parts[s]
        factors.append(d)
    return DecomposedGroup(tuple(sorted(factors)))


def brute_homology_at(
    cx: ChainComplex, q: int, limit: int = DEFAULT_LIMIT
) -> DecomposedGroup:
    """Homology of a finite complex at one degree, element by element."""
    term = cx.terms[q].group
    elements = enumerate_elements(term, limit)
    out = cx.differential(q)
    if out is None:
        kernel = set(elements)
    else:
        target = cx.terms[q + cx.direction].group
        kernel = {
            x
            for x in elements
            if not any(target.reduce(out.matrix.apply(x)))
        }
    incoming = cx.differential(q - cx.direction)
    if incoming is None:
        image = {(0,) * term.ngens}
    else:
        source = cx.terms[q - cx.direction].group
        image = {
            term.reduce(incoming.matrix.apply(y))
            for y in enumerate_elements(source, limit)
        }
    return quotient_invariants(term, kernel, image)


def brute_homology(cx: ChainComplex, limit: int = DEFAULT_LIMIT) -> Dict[int, DecomposedGroup]:
    return {q: brute_homology_at(cx, q, limit) for q in cx.degrees()}


def _join_sets(group: PresentedGroup, a: Set[tuple], b: Set[tuple], limit: int) -> frozenset:
    return frozenset(span_elements(group, list(a | b), limit))


def brute_distributive(
    family: Sequence[Subgroup], limit: int = DEFAULT_LIMIT
) -> Tuple[bool, Optional[tuple]]:
    """Distributivity of the closure, decided purely on element sets."""
    parent = family[0].parent
    members: List[frozenset] = []
    for s in family:
        es = frozenset(subgroup_elements(s, limit))
        if es not in members:
            members.append(es)
    changed = True
    while changed:
        changed = False
        current = list(members)
        for a, b in product(current, repeat=2):
            join = _join_sets(parent, set(a), set(b), limit)
            meet = frozenset(a & b)
            for cand in (join, meet):
                if cand not in members:
                    members.append(cand)
                    changed = True
    for a, b, c in product(members, repeat=3):
        bc = _join_sets(parent, set(b), set(c), limit)
        lhs = a & bc
        ab = a & b
        ac = a & c
        rhs = _join_sets(parent, set(ab), set(ac), limit)
        if lhs != frozenset(rhs):
            element = sorted(lhs - rhs)[0] if lhs - rhs else sorted(rhs - lhs)[0]
            return False, element
    return True, None


def verify_separating_element(
    a: Subgroup, b: Subgroup, c: Subgroup, element: GroupElement, limit: int = DEFAULT_LIMIT
) -> bool:
    """Element lies in a meet (b join c) but not in (a meet b) join (a meet c)."""
    parent = a.parent
    ea = subgroup_elements(a, limit)
    eb = subgroup_elements(b, limit)
    ec = subgroup_elements(c, limit)
    join_bc = span_elements(parent, list(eb | ec), limit)
    lhs = ea & join_bc
    rhs = span_elements(parent, list((ea & eb) | (ea & ec)), limit)
    return element.coords in lhs and element.coords not in rhs


def brute_crt_solutions(
    system: ResidueSystem, limit: int = DEFAULT_LIMIT
) -> List[tuple]:
    """Every ambient element satisfying all congruences, by full scan."""
    parent = system.parent
    modsets = [subgroup_elements(m, limit) for m in system.moduli]
    hits = []
    for x in enumerate_elements(parent, limit):
        ok = True
        for a, es in zip(system.representatives, modsets):
            diff = parent.reduce([u - v for u, v in zip(x, a.coords)])
            if diff not in es:
                ok = False
                break
        if ok:
            hits.append(x)
    return hits


def verify_cocycle_witness(
    family: Sequence[Subgroup],
    values: Sequence[GroupElement],
    limit: int = DEFAULT_LIMIT,
) -> bool:
    """Replay a degree-1 witness: pair values, cocycle law, no coboundary.

    The coboundary search is an exhaustive scan over tuples drawn from the
    subgroups' element sets, so this is exponential and meant for small
    finite instances only.
    """
    parent = family[0].parent
    n = len(family)
    pairs = list(combinations(range(n), 2))
    if len(values) != len(pairs):
        return False
    val = {pair: values[k] for k, pair in enumerate(pairs)}
    modsets = [subgroup_elements(s, limit) for s in family]
    for (alpha, beta), v in val.items():
        joint = span_elements(parent, list(modsets[alpha] | modsets[beta]), limit)
        if v.coords not in joint:
            return False
    for a, b, c in combinations(range(n), 3):
        total = val[(b, c)] - val[(a, c)] + val[(a, b)]
        if not total.is_zero():
            return False
    for combo in product(*[sorted(es) for es in modsets]):
        good = True
        for alpha, beta in pairs:
            diff = parent.reduce(
                [u - v for u, v in zip(combo[beta], combo[alpha])]
            )
            if diff != val[(alpha, beta)].coords:
                good = False
                break
        if good:
            return False
    return True


def hom_order_by_counting(
    source: PresentedGroup, target: PresentedGroup, limit: int = DEFAULT_LIMIT
) -> int:
    """Order of the hom group via annihilator counting in the target.

    Uses only the brute invariant factors of the source and element
    scalars in the target; both groups must be finite.
    """
    src_elems = set(enumerate_elements(source, limit))
    inv = quotient_invariants(source, src_elems, {(0,) * source.ngens})
    tgt_elems = enumerate_elements(target, limit)
    total = 1
    for d in inv.invariant_factors:
        if d == 0:
            raise ValueError("source must be finite")
        total *= sum(
            1 for y in tgt_elems if not any(_scalar(target, d, y))
        )
    return total


def tensor_by_presentation(
    left: PresentedGroup, right: PresentedGroup
) -> DecomposedGroup:
    """Tensor product straight from the Kronecker presentation."""
    from .intmatrix import IntMatrix

    n, m = left.ngens, right.ngens
    cols = []
    for rel in left.rel_hnf.columns():
        for j in range(m):
            col = [0] * (n * m)
            for i in range(n):
                col[i * m + j] = rel[i]
            cols.append(col)
    for rel in right.rel_hnf.columns():
        for i in range(n):
            col = [0] * (n * m)
            for j in range(m):
                col[i * m + j] = rel[j]
            cols.append(col)
    return PresentedGroup(n * m, IntMatrix.from_columns(cols, rows=n * m)).decomposition
