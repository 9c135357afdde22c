# Generated by Django 4.2.16 on 2026-10-19 10:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='EnumerationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('degree', models.PositiveSmallIntegerField()),
                ('started_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
                ('wall_time_seconds', models.FloatField(default=0)),
                ('peak_memory_bytes', models.BigIntegerField(default=0)),
                ('transitive_total', models.PositiveIntegerField(default=0)),
                ('count_max', models.PositiveIntegerField(default=0)),
                ('types', models.PositiveIntegerField(default=0)),
                ('total', models.PositiveIntegerField(default=0)),
                ('total_ac', models.PositiveIntegerField(default=0)),
                ('total_bc', models.PositiveIntegerField(default=0)),
                ('total_bc_not_ac', models.PositiveIntegerField(default=0)),
                ('total_gi', models.PositiveIntegerField(default=0)),
                ('galois_gi', models.PositiveIntegerField(default=0)),
                ('pruned', models.BooleanField(default=True)),
                ('parallel', models.PositiveSmallIntegerField(default=1)),
                ('report', models.JSONField(blank=True, default=dict)),
                ('golden_ok', models.BooleanField(help_text='Unset until compared with the golden table', null=True)),
            ],
            options={
                'ordering': ('-started_at',),
            },
        ),
    ]
