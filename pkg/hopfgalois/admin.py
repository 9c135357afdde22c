from django.contrib import admin

from .models import EnumerationRun


@admin.register(EnumerationRun)
class EnumerationRunAdmin(admin.ModelAdmin):
    list_display = ('degree', 'total', 'total_ac', 'total_bc', 'total_gi', 'wall_time_seconds', 'golden_ok', 'started_at')
    list_filter = ('degree', 'golden_ok', 'pruned')
    search_fields = ('degree',)
    date_hierarchy = 'started_at'
    readonly_fields = ('started_at', 'finished_at', 'report')

    def mark_golden_verified(self, request, queryset):
        queryset.update(golden_ok=True)
    mark_golden_verified.short_description = "Mark selected runs as matching the golden tables"

    def clear_golden_status(self, request, queryset):
        queryset.update(golden_ok=None)
    clear_golden_status.short_description = "Clear golden comparison status"

    actions = ['mark_golden_verified', 'clear_golden_status']
