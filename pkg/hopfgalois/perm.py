"""
Permutations and permutation groups on at most 16 points.

Points are 1..g in every external format (cycle text, orbits, stabilizers);
internally a permutation is a tuple of 0-based images.

Composition applies the right factor first: compose(p, q)(i) = p(q(i)).
Conjugation is n^t = t^-1 n t, i.e. conjugate(p, t) = compose(inverse(t), compose(p, t)).
"""
import itertools
import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from . import conf
from .exceptions import ElementCapExceeded, PermutationError

logger = logging.getLogger(__name__)

MAX_DEGREE = 16
MAX_ORBIT_DEGREE = 11

CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        g = len(self.images)
        if not 1 <= g <= MAX_DEGREE:
            raise PermutationError(f"degree {g} outside 1..{MAX_DEGREE}")
        if sorted(self.images) != list(range(g)):
            raise PermutationError(f"{self.images!r} is not a bijection")

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        """Image of a 1-based point."""
        if not 1 <= point <= self.degree:
            raise PermutationError(f"point {point} out of range 1..{self.degree}")
        return self.images[point - 1] + 1

    def __mul__(self, other):
        return compose(self, other)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self):
        return inverse(self)

    def __str__(self):
        return format_cycles(self)


def parse_cycles(text, degree):
    """Parse cycle notation such as "(1,8)(2,3)" into a Permutation on `degree` points."""
    if not 1 <= degree <= MAX_DEGREE:
        raise PermutationError(f"degree {degree} outside 1..{MAX_DEGREE}")
    compact = re.sub(r"\s", "", text)
    images = list(range(degree))
    seen = set()
    pos = 0
    for match in CYCLE_RE.finditer(compact):
        if match.start() != pos:
            raise PermutationError(f"malformed cycle text {text!r}")
        pos = match.end()
        body = match.group(1)
        if not body:
            continue
        try:
            cycle = [int(x) for x in body.split(",")]
        except ValueError:
            raise PermutationError(f"malformed cycle text {text!r}") from None
        for point in cycle:
            if not 1 <= point <= degree:
                raise PermutationError(f"point {point} out of range 1..{degree}")
            if point in seen:
                raise PermutationError(f"point {point} repeated in {text!r}")
            seen.add(point)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b - 1
    if pos != len(compact):
        raise PermutationError(f"malformed cycle text {text!r}")
    return Permutation(tuple(images))


def format_cycles(p):
    seen = set()
    out = []
    for i in range(p.degree):
        if i in seen or p.images[i] == i:
            continue
        cycle = [i]
        seen.add(i)
        j = p.images[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p.images[j]
        out.append("(%s)" % ",".join(str(x + 1) for x in cycle))
    return "".join(out) or "()"


def _check_degrees(p, q):
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} != {q.degree}")


def compose(p, q):
    """The permutation "apply q first, then p"."""
    _check_degrees(p, q)
    a = p.images
    return Permutation(tuple(a[j] for j in q.images))


def inverse(p):
    out = [0] * p.degree
    for i, j in enumerate(p.images):
        out[j] = i
    return Permutation(tuple(out))


def conjugate(p, t):
    """t^-1 p t."""
    _check_degrees(p, t)
    return Permutation(_conj(p.images, t.images, inverse(t).images))


def element_order(p):
    seen = set()
    order = 1
    for i in range(p.degree):
        if i in seen:
            continue
        length = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = p.images[j]
            length += 1
        order = math.lcm(order, length)
    return order


# Raw tuple helpers used on hot paths.

def _mul(a, b):
    return tuple(a[j] for j in b)


def _inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _conj(a, t, tinv):
    return tuple(tinv[a[j]] for j in t)


def _is_id(a):
    return all(i == x for i, x in enumerate(a))


class StabilizerChain:
    """Deterministic Schreier-Sims over raw image tuples."""

    def __init__(self, degree, generators):
        self.degree = degree
        gens = [g for g in generators if not _is_id(g)]
        self.base = []
        for g in gens:
            if all(g[b] == b for b in self.base):
                self.base.append(next(i for i, x in enumerate(g) if i != x))
        self.strong = [
            [g for g in gens if all(g[b] == b for b in self.base[:i])]
            for i in range(len(self.base))
        ]
        self.transversals = [
            self._transversal(self.base[i], self.strong[i])
            for i in range(len(self.base))
        ]
        self._complete()

    def _transversal(self, point, gens):
        ident = tuple(range(self.degree))
        table = {point: ident}
        queue = deque([point])
        while queue:
            p = queue.popleft()
            u = table[p]
            for s in gens:
                q = s[p]
                if q not in table:
                    table[q] = _mul(s, u)
                    queue.append(q)
        return table

    def sift(self, h, start=0):
        """Strip h through the chain; returns (residue, level reached)."""
        for j in range(start, len(self.base)):
            x = h[self.base[j]]
            u = self.transversals[j].get(x)
            if u is None:
                return h, j
            h = _mul(_inv(u), h)
        return h, len(self.base)

    def _complete(self):
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            table = self.transversals[i]
            for beta, u in list(table.items()):
                for s in list(self.strong[i]):
                    h = _mul(_inv(table[s[beta]]), _mul(s, u))
                    if _is_id(h):
                        continue
                    residue, j = self.sift(h, i + 1)
                    if j == len(self.base) and _is_id(residue):
                        continue
                    if j == len(self.base):
                        self.base.append(next(p for p, x in enumerate(residue) if p != x))
                        self.strong.append([])
                        self.transversals.append({})
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(residue)
                        self.transversals[level] = self._transversal(
                            self.base[level], self.strong[level]
                        )
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    @property
    def order(self):
        return math.prod(len(t) for t in self.transversals)

    def contains(self, a):
        residue, j = self.sift(a)
        return j == len(self.base) and _is_id(residue)

    def iter_elements(self):
        """Every element exactly once, as u_0 u_1 ... u_k over the transversals; not capped."""
        ident = tuple(range(self.degree))
        for combo in itertools.product(*(list(t.values()) for t in self.transversals)):
            a = ident
            for u in reversed(combo):
                a = _mul(u, a)
            yield a


class PermutationGroup:
    """A subgroup of S_g given by generators.

    Order and membership come from a stabilizer chain; the element list is
    materialized on demand for groups under the element cap.
    """

    def __init__(self, degree, generators, elements=None):
        if not 1 <= degree <= MAX_DEGREE:
            raise PermutationError(f"degree {degree} outside 1..{MAX_DEGREE}")
        gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise PermutationError(f"degree mismatch: {g.degree} != {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(gens)
        if elements is not None:
            self.__dict__["_element_images"] = tuple(elements)

    @classmethod
    def from_cycles(cls, degree, *texts):
        return cls(degree, [parse_cycles(t, degree) for t in texts])

    @classmethod
    def symmetric(cls, degree):
        if degree == 1:
            return cls(1, [])
        gens = [parse_cycles("(1,2)", degree)]
        if degree > 2:
            gens.append(Permutation(tuple(list(range(1, degree)) + [0])))
        return cls(degree, gens)

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermutationGroup({self.degree}, [{gens}])"

    @cached_property
    def chain(self):
        return StabilizerChain(self.degree, [g.images for g in self.generators])

    @cached_property
    def order(self):
        if "_element_images" in self.__dict__:
            return len(self._element_images)
        return self.chain.order

    @cached_property
    def _element_images(self):
        cap = conf.get("HGE_ELEMENT_CAP")
        if self.order > cap:
            raise ElementCapExceeded(self.order, cap)
        ident = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        seen = {ident}
        out = [ident]
        queue = deque([ident])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = _mul(s, a)
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    queue.append(b)
        return tuple(out)

    @cached_property
    def _element_set(self):
        return frozenset(self._element_images)

    def elements(self):
        return [Permutation(a) for a in self._element_images]

    def contains(self, p):
        if p.degree != self.degree:
            raise PermutationError(f"degree mismatch: {p.degree} != {self.degree}")
        return self.contains_images(p.images)

    def contains_images(self, a):
        if "_element_set" in self.__dict__ or self.order <= conf.get("HGE_ELEMENT_CAP"):
            return a in self._element_set
        return self.chain.contains(a)

    __contains__ = contains

    def orbit(self, point):
        if not 1 <= point <= self.degree:
            raise PermutationError(f"point {point} out of range 1..{self.degree}")
        seen = {point - 1}
        queue = deque([point - 1])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return {p + 1 for p in seen}

    def is_transitive(self):
        return len(self.orbit(1)) == self.degree

    def is_regular(self):
        return self.is_transitive() and self.order == self.degree

    def point_stabilizer(self, point):
        if not 1 <= point <= self.degree:
            raise PermutationError(f"point {point} out of range 1..{self.degree}")
        fixing = [a for a in self._element_images if a[point - 1] == point - 1]
        return PermutationGroup(self.degree, fixing, elements=fixing)

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.generators)

    def normalized_by(self, x):
        """True if x^-1 H x = H, tested on the generators of H."""
        xinv = _inv(x.images)
        return all(self.contains_images(_conj(g.images, x.images, xinv)) for g in self.generators)

    def canonical_key(self):
        """Sorted concatenation of all element image arrays, as bytes."""
        return b"".join(sorted(bytes(a) for a in self._element_images))


def group_order(group):
    return group.order


def contains(group, p):
    return group.contains(p)


def elements(group):
    return group.elements()


def orbit(group, point):
    return group.orbit(point)


def is_transitive(group):
    return group.is_transitive()


def is_regular(group):
    return group.is_regular()


def point_stabilizer(group, point):
    return group.point_stabilizer(point)


def regular_member(degree, key, generators):
    """Rebuild a regular subgroup from its canonical key and generator images.

    In a regular group sorted by image arrays, chunk j is the unique element sending 1 to j+1.
    """
    elems = [tuple(key[j * degree:(j + 1) * degree]) for j in range(degree)]
    return PermutationGroup(degree, [tuple(g) for g in generators], elements=elems)


@dataclass
class SubgroupConjugationOrbit:
    """All conjugates of a regular subgroup inside S_g.

    Members are kept as canonical keys plus generator images so that orbits of
    several hundred thousand subgroups fit in memory; `members` builds
    PermutationGroup objects lazily.
    """

    ambient_degree: int
    representative: PermutationGroup
    canonical_keys: list = field(default_factory=list)
    member_generators: list = field(default_factory=list)

    def __len__(self):
        return len(self.canonical_keys)

    def member(self, index):
        return regular_member(
            self.ambient_degree, self.canonical_keys[index], self.member_generators[index]
        )

    @property
    def members(self):
        for i in range(len(self)):
            yield self.member(i)

    def raw_members(self):
        return zip(self.canonical_keys, self.member_generators)


def conjugation_orbit(group):
    """Breadth-first closure of the group's canonical key under conjugation by S_g generators."""
    g = group.degree
    if not 2 <= g <= MAX_ORBIT_DEGREE:
        raise PermutationError(f"conjugation orbits are supported for degrees 2..{MAX_ORBIT_DEGREE}")
    if not group.is_regular():
        raise PermutationError(f"{group!r} is not regular")
    ambient = [t.images for t in PermutationGroup.symmetric(g).generators]
    ambient = [(t, _inv(t)) for t in ambient]

    start_elems = group._element_images
    start_gens = tuple(bytes(x.images) for x in group.generators)
    start_key = b"".join(sorted(bytes(a) for a in start_elems))
    keys = [start_key]
    gens_list = [start_gens]
    seen = {start_key}
    queue = deque([(start_key, start_gens)])
    while queue:
        key, gens = queue.popleft()
        elems = [key[j * g:(j + 1) * g] for j in range(g)]
        for t, tinv in ambient:
            new_key = b"".join(sorted(bytes(tinv[a[j]] for j in t) for a in elems))
            if new_key in seen:
                continue
            seen.add(new_key)
            new_gens = tuple(bytes(tinv[a[j]] for j in t) for a in gens)
            keys.append(new_key)
            gens_list.append(new_gens)
            queue.append((new_key, new_gens))
    logger.debug("conjugation orbit of order-%d subgroup in S_%d: %d members", group.order, g, len(keys))
    return SubgroupConjugationOrbit(g, group, keys, gens_list)
