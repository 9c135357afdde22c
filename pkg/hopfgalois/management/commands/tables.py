from django.core.management.base import CommandError
from django.utils import timezone

from hopfgalois.catalog import default_catalog
from hopfgalois.enumerator import EnumerationOptions, enumerate_structures
from hopfgalois.models import EnumerationRun
from hopfgalois.report import compare_golden, load_golden_for, measure, render, report_to_dict

from ._base import HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Prints the structure table of a degree and compares it with the golden table'

    def add_arguments(self, parser):
        self.add_degree_argument(parser)
        self.add_parallel_argument(parser)
        parser.add_argument('--save', action='store_true', help='Store the run in the database')

    def handle(self, *args, **kwargs):
        degree = kwargs['degree']
        golden = load_golden_for(degree)
        options = EnumerationOptions(parallel=kwargs['parallel'])
        with measure(degree) as metrics:
            report = enumerate_structures(degree, default_catalog(), options)
        self.stdout.write(render(report, 'text').decode('utf-8'), ending='')

        diff = compare_golden(report, golden)
        if kwargs['save']:
            run = EnumerationRun.from_report(
                report, metrics, parallel=options.parallel or 1, report_data=report_to_dict(report),
            )
            run.finished_at = timezone.now()
            run.golden_ok = not diff
            run.save()

        if diff:
            for mismatch in diff:
                self.stderr.write(self.style.ERROR(str(mismatch)))
            raise CommandError(f'degree {degree}: {len(diff)} cells differ from the golden table', returncode=1)
        self.stdout.write(self.style.SUCCESS(f'Degree {degree} matches the golden table'))
