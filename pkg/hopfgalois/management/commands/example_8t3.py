from django.core.management.base import CommandError

from hopfgalois.catalog import default_catalog
from hopfgalois.enumerator import dihedral_8t3_check

from ._base import HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Checks the dihedral Hopf Galois structures of the (C2)^3 extension of degree 8'

    def handle(self, *args, **kwargs):
        result = dihedral_8t3_check(default_catalog())
        self.stdout.write(f'{result.candidates} dihedral structures, classes {result.class_sizes}')
        self.stdout.write(f'{result.pairs_checked} pairs of listed groups are G-isomorphic')
        if result.candidates != 42 or result.class_sizes != [6] * 7 or not result.listed_in_one_class:
            raise CommandError('8T3 dihedral structures do not split as 42 = 7 x 6', returncode=1)
        self.stdout.write(self.style.SUCCESS('8T3: 42 = 7 x 6 dihedral structures'))
