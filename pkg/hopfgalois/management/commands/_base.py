import argparse

from django.core.management.base import BaseCommand, CommandError

from hopfgalois.catalog import MAX_CATALOG_DEGREE
from hopfgalois.exceptions import HopfGaloisError

DEGREES = range(2, MAX_CATALOG_DEGREE + 1)


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


class HopfGaloisCommand(BaseCommand):
    """Turns library errors into CommandError with exit status 1."""

    def execute(self, *args, **options):
        parallel = options.get("parallel")
        if parallel is not None and parallel < 1:
            raise CommandError(f"--parallel must be at least 1, got {parallel}", returncode=2)
        try:
            return super().execute(*args, **options)
        except HopfGaloisError as exc:
            raise CommandError(str(exc), returncode=1) from exc

    def add_degree_argument(self, parser, name="--degree"):
        parser.add_argument(name, type=int, required=True, choices=DEGREES, metavar="N",
                            help="Degree between 2 and 11")

    def add_parallel_argument(self, parser):
        parser.add_argument("--parallel", type=positive_int, default=None, metavar="W",
                            help="Worker processes, at least 1 (default HGE_PARALLEL)")
