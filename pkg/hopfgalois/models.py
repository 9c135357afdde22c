from django.db import models


class EnumerationRun(models.Model):
    """One stored enumeration of a degree, with its totals and the full json report."""
    degree = models.PositiveSmallIntegerField()
    started_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    wall_time_seconds = models.FloatField(default=0)
    peak_memory_bytes = models.BigIntegerField(default=0)

    transitive_total = models.PositiveIntegerField(default=0)
    count_max = models.PositiveIntegerField(default=0)
    types = models.PositiveIntegerField(default=0)

    total = models.PositiveIntegerField(default=0)
    total_ac = models.PositiveIntegerField(default=0)
    total_bc = models.PositiveIntegerField(default=0)
    total_bc_not_ac = models.PositiveIntegerField(default=0)
    total_gi = models.PositiveIntegerField(default=0)
    galois_gi = models.PositiveIntegerField(default=0)

    pruned = models.BooleanField(default=True)
    parallel = models.PositiveSmallIntegerField(default=1)
    report = models.JSONField(default=dict, blank=True)
    golden_ok = models.BooleanField(null=True, help_text="Unset until compared with the golden table")

    class Meta:
        ordering = ("-started_at",)

    def __str__(self):
        return f"Degree {self.degree}: {self.total} structures ({self.started_at:%Y-%m-%d %H:%M})"

    @classmethod
    def from_report(cls, report, metrics=None, pruned=True, parallel=1, report_data=None):
        total, ac, bc, bc_not_ac, gi, galois_gi = report.degree_totals
        run = cls(
            degree=report.degree,
            transitive_total=report.transitive_total,
            count_max=report.count_max,
            types=report.triv,
            total=total,
            total_ac=ac,
            total_bc=bc,
            total_bc_not_ac=bc_not_ac,
            total_gi=gi,
            galois_gi=galois_gi,
            pruned=pruned,
            parallel=parallel,
            report=report_data or {},
        )
        if metrics is not None:
            run.wall_time_seconds = metrics.wall_time_seconds
            run.peak_memory_bytes = metrics.peak_memory_bytes
        return run

    @property
    def totals(self):
        return (self.total, self.total_ac, self.total_bc,
                self.total_bc_not_ac, self.total_gi, self.galois_gi)
