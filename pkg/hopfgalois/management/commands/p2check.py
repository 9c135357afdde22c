from django.core.management.base import CommandError

from hopfgalois.enumerator import p2_witness_check

from ._base import HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Checks the order p^2 witnesses that keep cyclic and elementary types apart in degree p^2'

    def add_arguments(self, parser):
        parser.add_argument('--p', type=int, required=True, choices=(3, 5))
        parser.add_argument('--allow-large', action='store_true',
                            help='Permit p = 5, which searches groups of order 500 and 12000')

    def handle(self, *args, **kwargs):
        p = kwargs['p']
        if p == 5 and not kwargs['allow_large']:
            raise CommandError('p = 5 needs --allow-large', returncode=2)
        result = p2_witness_check(p, allow_large=kwargs['allow_large'])
        self.stdout.write(
            f'Hol(C{p * p}) has order {result.holomorph_cyclic_order}: '
            f'{result.subgroups_checked} subgroups, {result.transitive_subgroups} transitive, '
            f'each with an element of order {p * p}'
        )
        self.stdout.write(
            f'Hol(C{p} x C{p}) has order {result.holomorph_elementary_order}: '
            f'largest element order {result.elementary_max_element_order}'
        )
        self.stdout.write(self.style.SUCCESS(f'p = {p}: witness checks passed'))
