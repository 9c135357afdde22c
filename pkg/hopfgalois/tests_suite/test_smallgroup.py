import itertools

from django.test import SimpleTestCase

from ..catalog import default_catalog, regular_representatives
from ..exceptions import HopfGaloisError
from ..perm import PermutationGroup, _inv, _mul
from ..smallgroup import (
    SmallGroup,
    all_subgroups,
    automorphisms,
    find_isomorphism,
    holomorph,
    holomorph_stabilizer,
    opposite_regular,
)


class SmallGroupTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        catalog = default_catalog()
        cls.group = {
            name: SmallGroup.from_group(catalog.entry(degree, index).group)
            for name, degree, index in (
                ("C4", 4, 1), ("V4", 4, 2), ("C6", 6, 1), ("S3", 6, 2),
                ("C8", 8, 1), ("C4xC2", 8, 2), ("C2^3", 8, 3), ("D8", 8, 4), ("Q8", 8, 5),
                ("C9", 9, 1), ("C3xC3", 9, 2), ("D10", 10, 2),
            )
        }

    def test_subgroup_counts(self):
        """Test that all_subgroups finds every subgroup"""
        expected = {"C6": 4, "S3": 6, "Q8": 6, "V4": 5, "C4": 3, "D8": 10, "C2^3": 16}
        for name, count in expected.items():
            self.assertEqual(len(all_subgroups(self.group[name])), count, name)

    def test_subgroups_are_closed_and_sorted(self):
        """Test that subgroups come ordered by size, trivial first and whole group last"""
        subs = all_subgroups(self.group["S3"])
        self.assertEqual([len(s) for s in subs], [1, 2, 2, 2, 3, 6])
        for sub in subs:
            members = set(sub.carrier)
            self.assertTrue(all(_mul(a, b) in members for a in members for b in members))

    def test_element_orders(self):
        """Test element orders of Q8: one identity, one involution, six of order 4"""
        self.assertEqual(self.group["Q8"].order_profile(), [1, 2] + [4] * 6)

    def test_automorphism_counts(self):
        """Test |Aut| for the small groups"""
        expected = {"C8": 4, "C2^3": 168, "C3xC3": 48, "Q8": 24, "D8": 8, "S3": 6, "C4xC2": 8}
        for name, count in expected.items():
            self.assertEqual(len(automorphisms(self.group[name])), count, name)

    def test_automorphisms_are_homomorphisms(self):
        """Test that every automorphism respects multiplication"""
        g = self.group["D8"]
        for alpha in automorphisms(g):
            for i in range(len(g)):
                for j in range(len(g)):
                    self.assertEqual(alpha(g.mul(i, j)), g.mul(alpha(i), alpha(j)))

    def test_find_isomorphism(self):
        """Test that isomorphisms exist exactly between isomorphic groups"""
        self.assertIsNone(find_isomorphism(self.group["C4"], self.group["V4"]))
        self.assertIsNone(find_isomorphism(self.group["D8"], self.group["Q8"]))
        other_c4 = SmallGroup.from_group(PermutationGroup.from_cycles(4, "(1,3,2,4)"))
        h = find_isomorphism(self.group["C4"], other_c4)
        self.assertIsNotNone(h)
        self.assertEqual(sorted(h.map), [0, 1, 2, 3])

    def test_point_bijection_realizes_isomorphism(self):
        """Test that conjugating by the point bijection of h acts as h"""
        d8 = self.group["D8"]
        t = (1, 0, 3, 2, 5, 4, 7, 6)
        moved = SmallGroup(8, [_mul(_mul(t, a), _inv(t)) for a in d8.carrier])
        h = find_isomorphism(d8, moved)
        phi = h.point_bijection()
        for a in d8.carrier:
            self.assertEqual(_mul(_mul(phi, a), _inv(phi)), h.image(a))

    def test_holomorph_orders(self):
        """Test |Hol(N)| = g |Aut(N)|"""
        self.assertEqual(holomorph(self.group["C9"]).order, 54)
        self.assertEqual(holomorph(self.group["C2^3"]).order, 1344)
        self.assertEqual(holomorph(self.group["C8"]).order, 32)
        self.assertEqual(holomorph(self.group["D10"]).order, 200)

    def test_holomorph_normalizes_n(self):
        """Test that N is normal in its holomorph"""
        n = self.group["Q8"]
        hol = holomorph(n)
        self.assertTrue(n.group.is_subgroup_of(hol))
        self.assertTrue(all(n.group.normalized_by(x) for x in hol.generators))

    def test_holomorph_stabilizer_fixes_first_point(self):
        """Test that the stabilizer of 1 in Hol(N) is Aut(N) acting on points"""
        stab = holomorph_stabilizer(self.group["C3xC3"])
        self.assertEqual(len(stab), 48)
        self.assertTrue(all(a[0] == 0 for a in stab.carrier))

    def test_opposite_regular(self):
        """Test that right translations commute with N and equal N when N is abelian"""
        s3 = self.group["S3"]
        opp = opposite_regular(s3)
        self.assertEqual(opp.order, 6)
        self.assertTrue(opp.is_regular())
        self.assertNotEqual(opp.canonical_key(), s3.group.canonical_key())
        c6 = self.group["C6"]
        self.assertEqual(opposite_regular(c6).canonical_key(), c6.group.canonical_key())

    def test_point_element_requires_regular_group(self):
        """Test that point_element refuses a non-regular group"""
        s4 = SmallGroup.from_group(PermutationGroup.symmetric(4))
        with self.assertRaises(HopfGaloisError):
            s4.point_element


def _subgroups_by_subset_scan(group):
    """Scan every identity-containing subset of divisor size and keep those closed under multiplication."""
    n = len(group)
    e = group.index_of_identity
    others = [i for i in range(n) if i != e]
    subs = set()
    for size in (d for d in range(1, n + 1) if n % d == 0):
        for rest in itertools.combinations(others, size - 1):
            s = frozenset((e,) + rest)
            if all(group.mul(i, j) in s for i in s for j in s):
                subs.add(s)
    return subs


class SubgroupOracleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.catalog = default_catalog()

    def test_all_subgroups_against_subset_scan(self):
        """Test all_subgroups against an exhaustive subset scan for groups up to order 18"""
        cases = ((4, 3), (4, 4), (6, 2), (6, 5), (8, 3), (8, 4), (8, 5), (8, 9), (8, 11), (9, 2))
        for degree, index in cases:
            g = SmallGroup.from_group(self.catalog.entry(degree, index).group)
            with self.subTest(group=f"{degree}T{index}", order=len(g)):
                found = {frozenset(g.index[a] for a in H.carrier) for H in all_subgroups(g)}
                self.assertEqual(found, _subgroups_by_subset_scan(g))

    def test_subgroup_count_of_s4(self):
        """Test that S4 has 30 subgroups"""
        s4 = SmallGroup.from_group(self.catalog.entry(4, 5).group)
        self.assertEqual(len(all_subgroups(s4)), 30)

    def test_holomorph_order_is_g_times_automorphisms(self):
        """Test |Aut(N)| = |Hol(N)| / |N| for every type of degrees 2 to 11"""
        for degree in range(2, 12):
            for entry in regular_representatives(self.catalog, degree):
                n = SmallGroup.from_group(entry.group)
                self.assertEqual(holomorph(n).order, degree * len(automorphisms(n)), str(entry))
