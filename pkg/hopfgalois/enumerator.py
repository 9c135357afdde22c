"""
Hopf Galois structures per transitive group.

For each transitive G of degree g and each isomorphism type N_i of groups of
order g, the structures of type N_i are the conjugates of N_i in S_g that are
normalized by G. Each structure is then flagged almost classical and/or
bijective (Galois correspondence), and the structures of one (G, type) cell
are partitioned into G-isomorphism classes.
"""
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import conf
from .catalog import (
    MAX_CATALOG_DEGREE,
    holomorph_orders,
    max_order_bound,
    regular_representatives,
    verify_catalog,
)
from .exceptions import EnumerationError, WitnessCheckError
from .perm import (
    Permutation,
    PermutationGroup,
    _conj,
    _inv,
    _mul,
    conjugation_orbit,
    element_order,
    regular_member,
)
from .smallgroup import (
    SmallGroup,
    all_subgroups,
    automorphism_permutations,
    find_isomorphism,
    holomorph,
    opposite_regular,
)

logger = logging.getLogger(__name__)


@dataclass
class EnumerationOptions:
    prune: bool = True
    parallel: int = None
    verify: bool = True


@dataclass
class StructureRecord:
    id: int
    group_index: int
    type_index: int
    N: PermutationGroup
    almost_classical: bool
    bijective: bool
    contained_in_G: bool
    sub_g_stable_count: int

    @property
    def canonical_key(self):
        return self.N.canonical_key()


@dataclass
class TypeSummary:
    group_index: int
    type_index: int
    T: int = 0
    ac: int = 0
    bc: int = 0
    gi: int = 0

    def as_tuple(self):
        return (self.T, self.ac, self.bc, self.gi)


@dataclass
class IsoClass:
    group_index: int
    type_index: int
    member_ids: tuple


@dataclass
class DegreeReport:
    degree: int
    group_names: dict = field(default_factory=dict)
    group_orders: dict = field(default_factory=dict)
    type_labels: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    summaries: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    group_totals: dict = field(default_factory=dict)
    degree_totals: tuple = (0, 0, 0, 0, 0, 0)
    useful: list = field(default_factory=list)
    intermediate_field_counts: dict = field(default_factory=dict)
    transitive_total: int = 0
    triv: int = 0
    count_max: int = 0
    holomorph_bound: int = 0

    def summary(self, group_index, type_index):
        for s in self.summaries:
            if (s.group_index, s.type_index) == (group_index, type_index):
                return s
        raise KeyError((group_index, type_index))

    def records_for(self, group_index, type_index):
        return [
            r for r in self.records
            if (r.group_index, r.type_index) == (group_index, type_index)
        ]

    def class_sizes(self, group_index, type_index):
        return sorted(
            len(c.member_ids) for c in self.classes
            if (c.group_index, c.type_index) == (group_index, type_index)
        )


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(v) for v in out.values()), key=lambda v: v[0])


# Step 1

def _normalized_raw(degree, group_gens, keys, member_gens):
    """Indices of orbit members normalized by every generator in group_gens."""
    g = degree
    conj = [(x, _inv(x)) for x in group_gens]
    hits = []
    for idx, (key, gens) in enumerate(zip(keys, member_gens)):
        for x, xinv in conj:
            ok = True
            for n in gens:
                c = bytes(xinv[n[j]] for j in x)
                start = c[0] * g
                if key[start:start + g] != c:
                    ok = False
                    break
            if not ok:
                break
        else:
            hits.append(idx)
    return hits


def normalized_candidates(G, orbit):
    """Members of the conjugation orbit normalized by G, in orbit order."""
    if G.degree != orbit.ambient_degree:
        raise EnumerationError(f"degree mismatch: {G.degree} != {orbit.ambient_degree}")
    hits = _normalized_raw(
        G.degree, [x.images for x in G.generators], orbit.canonical_keys, orbit.member_generators
    )
    return [orbit.member(i) for i in hits]


# Steps 1-3 flags

def is_almost_classical(N, G):
    return all(G.contains(a) for a in opposite_regular(SmallGroup.from_group(N)).generators)


def contained_in_G(N, G):
    return all(G.contains(n) for n in N.generators)


def count_intermediate_fields(G):
    """Overgroups of Stab_G(1), counted as blocks B containing point 1."""
    g = G.degree
    elems = G._element_images
    count = 0
    for size in range(1, g + 1):
        if g % size:
            continue
        for rest in itertools.combinations(range(1, g), size - 1):
            block = frozenset((0,) + rest)
            if all(
                frozenset(x[b] for b in block) == block
                for x in elems if x[0] in block
            ):
                count += 1
    return count


def count_intermediate_fields_brute_force(G):
    """Same count from the full subgroup lattice; small groups only."""
    small = SmallGroup.from_group(G)
    stab = {a for a in small.carrier if a[0] == 0}
    return sum(1 for H in all_subgroups(small) if stab <= set(H.carrier))


def count_g_stable_subgroups(N, G):
    gens = [(x.images, _inv(x.images)) for x in G.generators]
    count = 0
    for L in all_subgroups(SmallGroup.from_group(N)):
        members = set(L.carrier)
        if all(
            _conj(a, x, xinv) in members
            for x, xinv in gens for a in L.carrier
        ):
            count += 1
    return count


# Step 4

def _equivariant(psi, N1, G):
    psi_inv = _inv(psi)
    for x in G.generators:
        x, xinv = x.images, _inv(x.images)
        for n in N1.generators:
            n = n.images
            left = _mul(_mul(psi, _conj(n, x, xinv)), psi_inv)
            right = _conj(_mul(_mul(psi, n), psi_inv), x, xinv)
            if left != right:
                return False
    return True


def are_g_isomorphic(N1, N2, G, _stabilizers=None):
    """Search isomorphisms u.h, u in Stab_1(Hol(N2)), commuting with conjugation by G."""
    if N1.degree != N2.degree or N1.order != N2.order:
        return False
    s1, s2 = SmallGroup.from_group(N1), SmallGroup.from_group(N2)
    h = find_isomorphism(s1, s2)
    if h is None:
        return False
    phi = h.point_bijection()
    if _stabilizers is not None:
        key = N2.canonical_key()
        if key not in _stabilizers:
            _stabilizers[key] = automorphism_permutations(s2)
        stab = _stabilizers[key]
    else:
        stab = automorphism_permutations(s2)
    return any(_equivariant(_mul(u, phi), N1, G) for u in stab)


def _partition(groups, stable_counts, G):
    """Local-index classes; only records with equal stable counts are compared."""
    uf = UnionFind(range(len(groups)))
    cache = {}
    for j in range(len(groups)):
        roots = []
        for i in range(j):
            r = uf.find(i)
            if r not in roots and r != uf.find(j):
                roots.append(r)
        for r in roots:
            if stable_counts[r] != stable_counts[j]:
                continue
            if are_g_isomorphic(groups[r], groups[j], G, cache):
                uf.union(r, j)
                break
    return uf.groups()


def partition_iso_classes(records, G):
    if len({(r.group_index, r.type_index) for r in records}) > 1:
        raise EnumerationError("records span more than one (group, type) cell")
    if not records:
        return []
    groups = [r.N for r in records]
    counts = [r.sub_g_stable_count for r in records]
    k, i = records[0].group_index, records[0].type_index
    return [
        IsoClass(k, i, tuple(records[m].id for m in cls))
        for cls in _partition(groups, counts, G)
    ]


# Cell work, shared between the serial path and worker processes

_orbits = {}


def _init_worker(orbits):
    _orbits.clear()
    _orbits.update(orbits)


@dataclass
class CellResult:
    group_index: int
    type_index: int
    keys: list
    generators: list
    flags: list
    classes: list
    intermediate_fields: int = None


def _run_cell(degree, group_index, group_gens, type_index):
    keys, member_gens = _orbits[type_index]
    G = PermutationGroup(degree, group_gens)
    hits = _normalized_raw(degree, [x.images for x in G.generators], keys, member_gens)
    result = CellResult(group_index, type_index, [], [], [], [])
    if not hits:
        return result
    fields = count_intermediate_fields(G)
    result.intermediate_fields = fields
    groups, counts = [], []
    for idx in hits:
        N = regular_member(degree, keys[idx], member_gens[idx])
        ac = is_almost_classical(N, G)
        stable = count_g_stable_subgroups(N, G)
        bc = stable == fields
        if ac and not bc:
            raise EnumerationError(
                f"{degree}T{group_index}: almost classical structure without bijective correspondence"
            )
        result.keys.append(keys[idx])
        result.generators.append(member_gens[idx])
        result.flags.append((ac, bc, contained_in_G(N, G), stable))
        groups.append(N)
        counts.append(stable)
    result.classes = _partition(groups, counts, G)
    logger.debug("%dT%d type %d: %d structures in %d classes",
                 degree, group_index, type_index, len(hits), len(result.classes))
    return result


def _work_items(degree, entries, reps, hol_orders, bound, prune):
    items = []
    for e in entries:
        if prune and e.claimed_order > bound:
            continue
        gens = [g.images for g in e.group.generators]
        for i, rep in enumerate(reps, start=1):
            if prune and e.claimed_order > hol_orders[rep.index]:
                continue
            items.append((degree, e.index, gens, i))
    return items


def enumerate_structures(degree, catalog, options=None):
    """All Hopf Galois structures of degree g, flagged, counted and partitioned."""
    options = options or EnumerationOptions()
    if not 2 <= degree <= MAX_CATALOG_DEGREE:
        raise EnumerationError(f"degree {degree} outside 2..{MAX_CATALOG_DEGREE}")
    workers = conf.get("HGE_PARALLEL") if options.parallel is None else options.parallel
    if workers < 1:
        raise EnumerationError(f"parallel workers must be at least 1, got {workers}")
    if options.verify:
        check = verify_catalog(catalog, degree)
        if not check.ok:
            raise EnumerationError(f"catalog for degree {degree} failed verification: {check.failures[0]}")
    entries = catalog.for_degree(degree)
    reps = regular_representatives(catalog, degree)
    hol_orders = holomorph_orders(catalog, degree)
    bound, count_max = max_order_bound(catalog, degree)

    started = time.perf_counter()
    orbits = {}
    for i, rep in enumerate(reps, start=1):
        orbit = conjugation_orbit(rep.group)
        orbits[i] = (orbit.canonical_keys, orbit.member_generators)
        logger.info("degree %d type %s: %d conjugates", degree, rep.label or rep.name, len(orbit))

    items = _work_items(degree, entries, reps, hol_orders, bound, options.prune)
    if workers > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(orbits,)
        ) as pool:
            results = list(pool.map(_run_cell, *zip(*items))) if items else []
    else:
        _init_worker(orbits)
        results = [_run_cell(*item) for item in items]
    results.sort(key=lambda r: (r.group_index, r.type_index))

    report = DegreeReport(
        degree=degree,
        group_names={e.index: e.label or e.name for e in entries},
        group_orders={e.index: e.claimed_order for e in entries},
        type_labels={i: rep.label or rep.name for i, rep in enumerate(reps, start=1)},
        transitive_total=len(entries),
        triv=len(reps),
        count_max=count_max,
        holomorph_bound=bound,
    )
    by_cell = {(r.group_index, r.type_index): r for r in results}
    next_id = 1
    for e in entries:
        group_row = [0, 0, 0, 0]
        for i in range(1, len(reps) + 1):
            cell = by_cell.get((e.index, i))
            summary = TypeSummary(e.index, i)
            if cell is not None and cell.keys:
                ids = []
                for key, gens, (ac, bc, inside, stable) in zip(cell.keys, cell.generators, cell.flags):
                    report.records.append(StructureRecord(
                        next_id, e.index, i, regular_member(degree, key, gens),
                        ac, bc, inside, stable,
                    ))
                    ids.append(next_id)
                    next_id += 1
                for cls in cell.classes:
                    report.classes.append(IsoClass(e.index, i, tuple(ids[m] for m in cls)))
                summary.T = len(ids)
                summary.ac = sum(1 for f in cell.flags if f[0])
                summary.bc = sum(1 for f in cell.flags if f[1])
                summary.gi = len(cell.classes)
                report.intermediate_field_counts[e.index] = cell.intermediate_fields
            report.summaries.append(summary)
            for n, value in enumerate(summary.as_tuple()):
                group_row[n] += value
        report.group_totals[e.index] = tuple(group_row)
        if group_row[0]:
            report.useful.append(e.index)

    total = sum(r[0] for r in report.group_totals.values())
    ac = sum(r[1] for r in report.group_totals.values())
    bc = sum(r[2] for r in report.group_totals.values())
    gi = sum(r[3] for r in report.group_totals.values())
    galois_gi = sum(report.group_totals[e.index][3] for e in entries if e.claimed_order == degree)
    report.degree_totals = (total, ac, bc, bc - ac, gi, galois_gi)

    _check_galois_baseline(report, entries)
    logger.info("degree %d: %d structures over %d groups in %.1fs",
                degree, total, len(report.useful), time.perf_counter() - started)
    return report


def _check_galois_baseline(report, entries):
    """The classical structure (right translations) exists for every Galois group."""
    keys = {}
    for r in report.records:
        keys.setdefault(r.group_index, set()).add(r.canonical_key)
    for e in entries:
        if e.claimed_order != report.degree:
            continue
        key = opposite_regular(SmallGroup.from_group(e.group)).canonical_key()
        if key not in keys.get(e.index, ()):
            raise EnumerationError(f"{e}: classical structure missing")


# Oracles

@lru_cache(maxsize=None)
def regular_subgroups_brute_force(degree):
    """Canonical keys of every regular subgroup of S_g, for degrees below 8 where two generators suffice."""
    symmetric = PermutationGroup.symmetric(degree)
    fixed_point_free = [
        a for a in symmetric.chain.iter_elements()
        if all(a[i] != i for i in range(degree)) and degree % element_order_raw(a) == 0
    ]
    ident = tuple(range(degree))
    found = set()
    for a, b in itertools.combinations_with_replacement(fixed_point_free, 2):
        span = {ident}
        frontier = [ident]
        while frontier and len(span) <= degree:
            nxt = []
            for c in frontier:
                for s in (a, b):
                    d = _mul(s, c)
                    if d not in span:
                        span.add(d)
                        nxt.append(d)
            frontier = nxt
        if len(span) != degree:
            continue
        if all(_is_fixed_point_free(c) for c in span if c != ident):
            found.add(b"".join(sorted(bytes(c) for c in span)))
    return frozenset(found)


def _is_fixed_point_free(a):
    return all(a[i] != i for i in range(len(a)))


def element_order_raw(a):
    return element_order(Permutation(a))


def brute_force_candidates(G):
    """Canonical keys of all regular subgroups of S_g normalized by G."""
    out = set()
    gens = [(x.images, _inv(x.images)) for x in G.generators]
    for key in regular_subgroups_brute_force(G.degree):
        g = G.degree
        elems = {key[j * g:(j + 1) * g] for j in range(g)}
        if all(bytes(_conj(tuple(e), x, xinv)) in elems for e in elems for x, xinv in gens):
            out.add(key)
    return out


# Order p^2 witnesses

@dataclass
class WitnessReport:
    p: int
    holomorph_cyclic_order: int
    subgroups_checked: int
    transitive_subgroups: int
    holomorph_elementary_order: int
    elementary_max_element_order: int


def _cyclic(n):
    return PermutationGroup(n, [tuple(list(range(1, n)) + [0])])


def _elementary(p):
    g = p * p
    shift_a = tuple((i // p) * p + (i % p + 1) % p for i in range(g))
    shift_b = tuple((i + p) % g for i in range(g))
    return PermutationGroup(g, [shift_a, shift_b])


def p2_witness_check(p, allow_large=False):
    """Transitive subgroups of Hol(C_p^2) contain an element of order p^2; Hol(C_p x C_p) has none."""
    if p not in (3, 5):
        raise WitnessCheckError(f"p must be 3 or 5, got {p}")
    if p == 5 and not allow_large:
        raise WitnessCheckError("p = 5 needs the large-search opt-in")
    g = p * p

    cyclic_hol = holomorph(SmallGroup.from_group(_cyclic(g)))
    hol_small = SmallGroup(g, list(cyclic_hol.chain.iter_elements()))
    checked = transitive = 0
    for H in all_subgroups(hol_small):
        checked += 1
        if not H.group.is_transitive():
            continue
        transitive += 1
        if g not in set(hol_small.element_orders[hol_small.index[a]] for a in H.carrier):
            raise WitnessCheckError(f"transitive subgroup of order {len(H)} without an element of order {g}")

    elementary_hol = holomorph(SmallGroup.from_group(_elementary(p)))
    top = 1
    for a in elementary_hol.chain.iter_elements():
        top = max(top, element_order_raw(a))
        if top == g:
            raise WitnessCheckError(f"Hol(C{p} x C{p}) has an element of order {g}")
    logger.info("p=%d: %d subgroups of Hol(C%d), %d transitive", p, checked, g, transitive)
    return WitnessReport(p, cyclic_hol.order, checked, transitive, elementary_hol.order, top)


# Dihedral structures on the elementary abelian extension of degree 8

D8_ON_8T3 = (
    ("(1,8)(2,3)(4,5)(6,7)", "(1,6,5,2)(3,4,7,8)"),
    ("(1,8)(2,3)(4,5)(6,7)", "(1,4,7,2)(3,6,5,8)"),
    ("(1,6)(2,5)(3,4)(7,8)", "(1,4,5,8)(2,3,6,7)"),
    ("(1,2)(3,8)(4,7)(5,6)", "(1,4,3,6)(2,5,8,7)"),
    ("(1,6)(2,5)(3,4)(7,8)", "(1,2,3,8)(4,5,6,7)"),
    ("(1,4)(2,7)(3,6)(5,8)", "(1,6,7,8)(2,3,4,5)"),
)


@dataclass
class DihedralExampleReport:
    candidates: int
    class_sizes: list
    listed_in_one_class: bool
    pairs_checked: int


def dihedral_8t3_check(catalog):
    """The six listed D8 groups are normalized by 8T3, mutually G-isomorphic, and sit in 42 = 7 x 6."""
    G = catalog.entry(8, 3).group
    listed = [PermutationGroup.from_cycles(8, s, r) for s, r in D8_ON_8T3]
    d8 = SmallGroup.from_group(catalog.entry(8, 4).group)
    for n, N in enumerate(listed, start=1):
        if not N.is_regular() or find_isomorphism(SmallGroup.from_group(N), d8) is None:
            raise EnumerationError(f"listed group {n} is not a regular dihedral group")
        if not all(N.normalized_by(x) for x in G.generators):
            raise EnumerationError(f"listed group {n} is not normalized by 8T3")

    pairs = 0
    for N1, N2 in itertools.combinations(listed, 2):
        pairs += 1
        if not are_g_isomorphic(N1, N2, G):
            raise EnumerationError("listed groups are not mutually G-isomorphic")

    type_index = next(
        i for i, rep in enumerate(regular_representatives(catalog, 8), start=1) if rep.index == 4
    )
    candidates = normalized_candidates(G, conjugation_orbit(catalog.entry(8, 4).group))
    fields = count_intermediate_fields(G)
    records = []
    for m, N in enumerate(candidates, start=1):
        stable = count_g_stable_subgroups(N, G)
        records.append(StructureRecord(
            m, 3, type_index, N, is_almost_classical(N, G), stable == fields,
            contained_in_G(N, G), stable,
        ))
    classes = partition_iso_classes(records, G)
    ids = {r.canonical_key: r.id for r in records}
    listed_ids = {ids.get(N.canonical_key()) for N in listed}
    one_class = None not in listed_ids and any(listed_ids <= set(c.member_ids) for c in classes)
    return DihedralExampleReport(
        len(candidates), sorted(len(c.member_ids) for c in classes), one_class, pairs,
    )
