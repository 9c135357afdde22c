"""
Structure of small groups given by their full element lists: subgroup lattices,
automorphisms, isomorphism search, holomorphs and opposite regular representations.

Elements are identified with carrier indices. For a regular group N on g points,
point i (0-based) is identified with the unique n_i in N such that n_i(0) = i.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from . import conf
from .exceptions import ElementCapExceeded, HopfGaloisError
from .perm import PermutationGroup, _mul

logger = logging.getLogger(__name__)

AUTOMORPHISM_CAP = 200


class SmallGroup:
    def __init__(self, degree, carrier):
        cap = conf.get("HGE_ELEMENT_CAP")
        if len(carrier) > cap:
            raise ElementCapExceeded(len(carrier), cap)
        self.degree = degree
        self.carrier = [tuple(a) for a in carrier]
        self.index = {a: i for i, a in enumerate(self.carrier)}
        if len(self.index) != len(self.carrier):
            raise HopfGaloisError("carrier has duplicate elements")
        self.index_of_identity = self.index[tuple(range(degree))]

    @classmethod
    def from_group(cls, group):
        return cls(group.degree, group._element_images)

    def __len__(self):
        return len(self.carrier)

    def __repr__(self):
        return f"SmallGroup(degree={self.degree}, order={len(self)})"

    @cached_property
    def group(self):
        return PermutationGroup(self.degree, self.carrier, elements=self.carrier)

    def mul(self, i, j):
        return self.index[_mul(self.carrier[i], self.carrier[j])]

    @cached_property
    def element_orders(self):
        e = self.index_of_identity
        orders = []
        for i in range(len(self)):
            k, j = 1, i
            while j != e:
                j = self.mul(i, j)
                k += 1
            orders.append(k)
        return orders

    def order_profile(self):
        return sorted(self.element_orders)

    def closure(self, generators):
        """Carrier indices of the subgroup generated by the given indices."""
        gens = list(generators)
        span = {self.index_of_identity}
        queue = deque(span)
        while queue:
            a = queue.popleft()
            for s in gens:
                b = self.mul(s, a)
                if b not in span:
                    span.add(b)
                    queue.append(b)
        return frozenset(span)

    def subgroup(self, indices):
        return SmallGroup(self.degree, [self.carrier[i] for i in sorted(indices)])

    @cached_property
    def generating_sequence(self):
        """Greedy generators, preferring elements of maximal order."""
        ranked = sorted(range(len(self)), key=lambda i: (-self.element_orders[i], i))
        gens = []
        span = frozenset([self.index_of_identity])
        for i in ranked:
            if len(span) == len(self):
                break
            if i not in span:
                gens.append(i)
                span = self.closure(gens)
        return tuple(gens)

    def is_regular(self):
        return len(self) == self.degree and self.group.is_transitive()

    @cached_property
    def point_element(self):
        """point_element[i] = carrier index of n_i, the element sending point 0 to i."""
        if not self.is_regular():
            raise HopfGaloisError(f"{self!r} is not regular")
        table = [0] * self.degree
        for idx, a in enumerate(self.carrier):
            table[a[0]] = idx
        return table


@dataclass(frozen=True)
class GroupIsomorphism:
    source: SmallGroup
    target: SmallGroup
    map: tuple

    def __call__(self, index):
        return self.map[index]

    def image(self, a):
        """Image of a permutation of the source carrier."""
        return self.target.carrier[self.map[self.source.index[a]]]

    def point_bijection(self):
        """The permutation of points carrying source to target: point of n maps to point of h(n)."""
        src, tgt = self.source, self.target
        return tuple(
            tgt.carrier[self.map[src.point_element[i]]][0] for i in range(src.degree)
        )


def all_subgroups(group):
    """Every subgroup, seeded by the cyclic ones and closed under joins with cyclic subgroups."""
    e = group.index_of_identity
    cyclic = []
    seen_cyclic = set()
    for i in range(len(group)):
        c = group.closure([i])
        if c not in seen_cyclic:
            seen_cyclic.add(c)
            cyclic.append((i, c))
    found = {frozenset([e]): None}
    for _, c in cyclic:
        found.setdefault(c, None)
    queue = deque(found)
    while queue:
        sub = queue.popleft()
        for i, c in cyclic:
            if c <= sub:
                continue
            joined = group.closure(list(sub) + [i])
            if joined not in found:
                found[joined] = None
                queue.append(joined)
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    logger.debug("%r has %d subgroups", group, len(subs))
    return [group.subgroup(s) for s in subs]


def _extend(source, target, gens, images):
    """Extend generator images to a homomorphism on the span of gens, or None."""
    phi = {source.index_of_identity: target.index_of_identity}
    queue = deque([source.index_of_identity])
    while queue:
        a = queue.popleft()
        for s, t in zip(gens, images):
            b = source.mul(s, a)
            img = target.mul(t, phi[a])
            known = phi.get(b)
            if known is None:
                phi[b] = img
                queue.append(b)
            elif known != img:
                return None
    return phi


def _search(source, target, first_only):
    if len(source) != len(target):
        return []
    if source.order_profile() != target.order_profile():
        return []
    gens = source.generating_sequence
    by_order = {}
    for j in range(len(target)):
        by_order.setdefault(target.element_orders[j], []).append(j)
    found = []

    def backtrack(images):
        k = len(images)
        if k == len(gens):
            phi = _extend(source, target, gens, images)
            if phi is not None and len(phi) == len(source) and len(set(phi.values())) == len(target):
                found.append(GroupIsomorphism(source, target, tuple(phi[i] for i in range(len(source)))))
            return
        for j in by_order.get(source.element_orders[gens[k]], ()):
            candidate = images + [j]
            if _extend(source, target, gens[:k + 1], candidate) is None:
                continue
            backtrack(candidate)
            if first_only and found:
                return

    backtrack([])
    return found


def automorphisms(group):
    if len(group) > AUTOMORPHISM_CAP:
        raise ElementCapExceeded(len(group), AUTOMORPHISM_CAP)
    return _search(group, group, first_only=False)


def find_isomorphism(source, target):
    if max(len(source), len(target)) > AUTOMORPHISM_CAP:
        raise ElementCapExceeded(max(len(source), len(target)), AUTOMORPHISM_CAP)
    found = _search(source, target, first_only=True)
    return found[0] if found else None


def automorphism_permutations(group):
    """p_alpha(i) = point of alpha(n_i), one per automorphism; these fix point 0."""
    points = group.point_element
    perms = []
    for alpha in automorphisms(group):
        perms.append(tuple(group.carrier[alpha.map[points[i]]][0] for i in range(group.degree)))
    return perms


def holomorph(group):
    """The normalizer of a regular group in S_g, built as <N, p_alpha>."""
    if not group.is_regular():
        raise HopfGaloisError(f"{group!r} is not regular")
    auts = automorphism_permutations(group)
    gens = [group.carrier[i] for i in group.generating_sequence]
    # Generators of Aut(N) suffice, chosen greedily among the p_alpha.
    aut_group = SmallGroup(group.degree, auts)
    gens.extend(aut_group.carrier[i] for i in aut_group.generating_sequence)
    hol = PermutationGroup(group.degree, gens)
    expected = group.degree * len(auts)
    if hol.order != expected:
        raise HopfGaloisError(f"holomorph order {hol.order} != {expected}")
    return hol


def holomorph_stabilizer(group):
    """Stabilizer of point 1 in the holomorph, i.e. Aut(N) acting on points."""
    return SmallGroup(group.degree, automorphism_permutations(group))


def opposite_regular(group):
    """The centralizer of a regular N in S_g: right translations rho_m(i) = n_i(m(0))."""
    points = group.point_element
    rows = [group.carrier[points[i]] for i in range(group.degree)]
    elems = [tuple(row[j] for row in rows) for j in range(group.degree)]
    opp = PermutationGroup(group.degree, elems, elements=elems)
    for a in elems:
        for n in group.carrier:
            if _mul(a, n) != _mul(n, a):
                raise HopfGaloisError("opposite representation does not commute with N")
    return opp

