from django.utils import timezone

from hopfgalois.catalog import default_catalog
from hopfgalois.enumerator import EnumerationOptions, enumerate_structures
from hopfgalois.models import EnumerationRun
from hopfgalois.report import SummaryRow, measure, render_summary, report_to_dict

from ._base import DEGREES, HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Prints the per-degree totals with run time and memory'

    def add_arguments(self, parser):
        parser.add_argument('--max-degree', type=int, required=True, choices=DEGREES, metavar='N')
        parser.add_argument('--min-degree', type=int, default=2, choices=DEGREES, metavar='N')
        self.add_parallel_argument(parser)
        parser.add_argument('--save', action='store_true', help='Store every run in the database')

    def handle(self, *args, **kwargs):
        catalog = default_catalog()
        options = EnumerationOptions(parallel=kwargs['parallel'])
        rows = []
        for degree in range(kwargs['min_degree'], kwargs['max_degree'] + 1):
            with measure(degree) as metrics:
                report = enumerate_structures(degree, catalog, options)
            rows.append(SummaryRow(
                degree, report.degree_totals, report.transitive_total,
                report.count_max, report.triv, metrics,
            ))
            if kwargs['save']:
                run = EnumerationRun.from_report(
                    report, metrics, parallel=options.parallel or 1, report_data=report_to_dict(report),
                )
                run.finished_at = timezone.now()
                run.save()
        self.stdout.write(render_summary(rows), ending='')
