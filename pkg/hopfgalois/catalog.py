"""
Transitive group tables for degrees 2..11.

The text format is one entry per line: `degree index order [label] gen1 gen2 ...`,
with `#` comments and blank lines ignored.
"""
import io
import itertools
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from . import conf
from .exceptions import CatalogError, CatalogVerificationError, PermutationError
from .perm import PermutationGroup, _conj, _inv, format_cycles, parse_cycles
from .smallgroup import SmallGroup, find_isomorphism, holomorph

logger = logging.getLogger(__name__)

MAX_CATALOG_DEGREE = 11
GENERATOR_RE = re.compile(r"(\(\d+(,\d+)*\))+|\(\)")

# Published number of transitive groups per degree.
EXPECTED_TOTALS = {2: 1, 3: 2, 4: 5, 5: 5, 6: 16, 7: 7, 8: 50, 9: 34, 10: 45, 11: 8}

# Number of isomorphism types of groups of order g.
EXPECTED_TYPES = {2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1}


@dataclass
class TransitiveGroupEntry:
    degree: int
    index: int
    claimed_order: int
    generators: list
    label: str = ""

    def __str__(self):
        return f"{self.degree}T{self.index}"

    @property
    def name(self):
        return str(self)

    @property
    def group(self):
        if not hasattr(self, "_group"):
            self._group = PermutationGroup(self.degree, self.generators)
        return self._group

    def to_line(self):
        parts = [str(self.degree), str(self.index), str(self.claimed_order)]
        if self.label:
            parts.append(self.label)
        parts.extend(format_cycles(g) for g in self.generators)
        return " ".join(parts)


@dataclass
class Catalog:
    entries: dict = field(default_factory=dict)

    def degrees(self):
        return sorted(self.entries)

    def for_degree(self, degree):
        if degree not in self.entries:
            raise CatalogError(f"degree {degree} not present in catalog")
        return self.entries[degree]

    def entry(self, degree, index):
        for e in self.for_degree(degree):
            if e.index == index:
                return e
        raise CatalogError(f"{degree}T{index} not present in catalog")

    def dumps(self):
        lines = []
        for degree in self.degrees():
            lines.extend(e.to_line() for e in self.entries[degree])
        return "\n".join(lines) + "\n"


def _parse_line(line, lineno):
    fields = line.split()
    if len(fields) < 4:
        raise CatalogError("expected `degree index order [label] generators...`", lineno)
    try:
        degree, index, order = (int(x) for x in fields[:3])
    except ValueError:
        raise CatalogError("degree, index and order must be integers", lineno) from None
    if not 2 <= degree <= MAX_CATALOG_DEGREE:
        raise CatalogError(f"degree {degree} outside 2..{MAX_CATALOG_DEGREE}", lineno)
    rest = fields[3:]
    label = ""
    if not GENERATOR_RE.fullmatch(rest[0]):
        label, rest = rest[0], rest[1:]
    if not rest:
        raise CatalogError("entry has no generators", lineno)
    try:
        gens = [parse_cycles(text, degree) for text in rest]
    except PermutationError as exc:
        raise CatalogError(str(exc), lineno) from exc
    return TransitiveGroupEntry(degree, index, order, gens, label)


def load_catalog(source):
    """Parse a catalog from a text or byte stream; syntax checks only."""
    text = source.read()
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CatalogError(f"catalog is not valid UTF-8: {exc}") from exc
    catalog = Catalog()
    seen = set()
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entry = _parse_line(line, lineno)
        key = (entry.degree, entry.index)
        if key in seen:
            raise CatalogError(f"duplicate entry {entry}", lineno)
        seen.add(key)
        catalog.entries.setdefault(entry.degree, []).append(entry)
    if not seen:
        raise CatalogError("catalog is empty")
    for entries in catalog.entries.values():
        entries.sort(key=lambda e: e.index)
    logger.debug("loaded %d catalog entries", len(seen))
    return catalog


@lru_cache(maxsize=4)
def _load_path(path):
    with open(path, "rb") as fh:
        return load_catalog(fh)


def default_catalog():
    """The catalog at HGE_CATALOG_PATH, or the embedded one."""
    return _load_path(str(conf.get("HGE_CATALOG_PATH")))


@dataclass
class VerificationReport:
    degree: int
    level: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, entry, message):
        self.failures.append(CatalogVerificationError(entry, message))


def _invariants(group):
    """Conjugacy invariants: order, element cycle types, stabilizer orbit lengths."""
    if group.order > conf.get("HGE_ELEMENT_CAP"):
        return (group.order,)
    cycle_types = Counter()
    for a in group._element_images:
        seen, lengths = set(), []
        for i in range(len(a)):
            if i in seen:
                continue
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = a[j]
                n += 1
            lengths.append(n)
        cycle_types[tuple(sorted(lengths))] += 1
    stab = group.point_stabilizer(1)
    orbit_lengths = sorted(len(stab.orbit(p)) for p in range(1, group.degree + 1))
    return (group.order, tuple(sorted(cycle_types.items())), tuple(orbit_lengths))


def are_conjugate(g1, g2):
    """Exhaustive search for t in S_g with t^-1 G1 t = G2."""
    if g1.order != g2.order:
        return False
    gens = [g.images for g in g1.generators]
    for t in itertools.permutations(range(g1.degree)):
        tinv = _inv(t)
        if all(g2.contains_images(_conj(a, t, tinv)) for a in gens):
            return True
    return False


def verify_catalog(catalog, degree, level="basic"):
    """Check transitivity, orders, ordering and counts; `strong` adds pairwise non-conjugacy."""
    entries = catalog.for_degree(degree)
    report = VerificationReport(degree, level)
    expected = EXPECTED_TOTALS.get(degree)
    if expected is not None and len(entries) != expected:
        report.fail(f"degree {degree}", f"{len(entries)} entries, expected {expected}")
    if [e.index for e in entries] != list(range(1, len(entries) + 1)):
        report.fail(f"degree {degree}", "indices are not 1..n without gaps")
    previous = 0
    for e in entries:
        report.checked += 1
        if not e.group.is_transitive():
            report.fail(e, "not transitive")
        if e.group.order != e.claimed_order:
            report.fail(e, f"order {e.group.order}, claimed {e.claimed_order}")
        if e.claimed_order < previous:
            report.fail(e, "orders are not non-decreasing")
        previous = e.claimed_order
    if level == "strong" and report.ok:
        buckets = {}
        for e in entries:
            buckets.setdefault(_invariants(e.group), []).append(e)
        for same in buckets.values():
            for a, b in itertools.combinations(same, 2):
                if are_conjugate(a.group, b.group):
                    report.fail(b, f"conjugate to {a}")
    for failure in report.failures:
        logger.warning("catalog check failed: %s", failure)
    logger.info("verified degree %d (%s): %d entries, %d failures",
                degree, level, report.checked, len(report.failures))
    return report


def regular_representatives(catalog, degree):
    """The first entries of order g: one regular representative per isomorphism type."""
    reps = [e for e in catalog.for_degree(degree) if e.claimed_order == degree]
    small = [SmallGroup.from_group(e.group) for e in reps]
    for (a, sa), (b, sb) in itertools.combinations(zip(reps, small), 2):
        if find_isomorphism(sa, sb) is not None:
            raise CatalogVerificationError(b, f"isomorphic to {a}")
    return reps


def holomorph_orders(catalog, degree):
    """|Hol(N)| per regular representative, keyed by index."""
    cache = catalog.__dict__.setdefault("_holomorph_orders", {})
    if degree not in cache:
        cache[degree] = {
            e.index: holomorph(SmallGroup.from_group(e.group)).order
            for e in regular_representatives(catalog, degree)
        }
    return cache[degree]


def max_order_bound(catalog, degree):
    """(largest holomorph order over the types, number of entries not exceeding it)."""
    bound = max(holomorph_orders(catalog, degree).values())
    count_max = sum(1 for e in catalog.for_degree(degree) if e.claimed_order <= bound)
    return bound, count_max
