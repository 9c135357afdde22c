from django.utils import timezone

from hopfgalois.catalog import default_catalog
from hopfgalois.enumerator import EnumerationOptions, enumerate_structures
from hopfgalois.models import EnumerationRun
from hopfgalois.report import FORMATS, measure, render, report_to_dict

from ._base import HopfGaloisCommand


class Command(HopfGaloisCommand):
    help = 'Enumerates the Hopf Galois structures of every transitive group of a degree'

    def add_arguments(self, parser):
        self.add_degree_argument(parser)
        parser.add_argument('--format', choices=FORMATS, default='text')
        parser.add_argument('--out', help='Write the report to this file instead of stdout')
        parser.add_argument('--no-prune', action='store_true',
                            help='Also examine groups larger than every holomorph')
        self.add_parallel_argument(parser)
        parser.add_argument('--save', action='store_true', help='Store the run in the database')

    def handle(self, *args, **kwargs):
        degree = kwargs['degree']
        options = EnumerationOptions(prune=not kwargs['no_prune'], parallel=kwargs['parallel'])
        with measure(degree) as metrics:
            report = enumerate_structures(degree, default_catalog(), options)
        payload = render(report, kwargs['format'])

        if kwargs['out']:
            with open(kwargs['out'], 'wb') as fh:
                fh.write(payload)
            self.stdout.write(self.style.SUCCESS(f'Wrote degree {degree} report to {kwargs["out"]}'))
        else:
            self.stdout.write(payload.decode('utf-8'), ending='')

        if kwargs['save']:
            run = EnumerationRun.from_report(
                report, metrics, pruned=options.prune, parallel=options.parallel or 1,
                report_data=report_to_dict(report),
            )
            run.finished_at = timezone.now()
            run.save()
            self.stderr.write(self.style.SUCCESS(f'Saved run #{run.pk}'))
