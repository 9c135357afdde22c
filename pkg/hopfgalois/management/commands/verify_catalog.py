from django.core.management.base import CommandError

from hopfgalois import conf
from hopfgalois.catalog import default_catalog, max_order_bound, regular_representatives, verify_catalog

from ._base import HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Checks the transitive group catalog for one degree'

    def add_arguments(self, parser):
        self.add_degree_argument(parser)
        parser.add_argument('--strong', action='store_true',
                            help='Also check that no two entries are conjugate in S_g')
        parser.add_argument('--allow-slow', action='store_true',
                            help='Permit --strong above HGE_STRONG_VERIFY_MAX_DEGREE')

    def handle(self, *args, **kwargs):
        degree = kwargs['degree']
        level = 'strong' if kwargs['strong'] else 'basic'
        limit = conf.get('HGE_STRONG_VERIFY_MAX_DEGREE')
        if level == 'strong' and degree > limit and not kwargs['allow_slow']:
            raise CommandError(
                f'strong verification is limited to degree {limit}; pass --allow-slow', returncode=2
            )

        catalog = default_catalog()
        report = verify_catalog(catalog, degree, level)
        for failure in report.failures:
            self.stderr.write(self.style.ERROR(str(failure)))
        if not report.ok:
            raise CommandError(f'degree {degree}: {len(report.failures)} catalog checks failed', returncode=1)

        reps = regular_representatives(catalog, degree)
        bound, count_max = max_order_bound(catalog, degree)
        self.stdout.write(self.style.SUCCESS(f'Degree {degree}: {report.checked} entries verified ({level})'))
        self.stdout.write(f'Types: {", ".join(e.label or e.name for e in reps)}')
        self.stdout.write(f'Largest holomorph order {bound}; Max = {count_max}')
