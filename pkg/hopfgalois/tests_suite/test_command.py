import json
import os
import tempfile
from io import StringIO
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase, override_settings

from ..models import EnumerationRun
from ..report import load_golden_for


class EnumerateCommandTests(TestCase):
    def test_text_report(self):
        """Test that enumerate prints the degree 4 table"""
        out = StringIO()
        call_command('enumerate', degree=4, stdout=out)
        self.assertIn('Degree 4 Hopf Galois structures', out.getvalue())
        self.assertIn('HG 10', out.getvalue())
        self.assertFalse(EnumerationRun.objects.exists())

    def test_json_report(self):
        """Test that --format json prints parseable json"""
        out = StringIO()
        call_command('enumerate', degree=3, format='json', stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data['degree'], 3)
        self.assertEqual(data['degree_totals']['HG'], 2)

    def test_out_file(self):
        """Test that --out writes the report to a file"""
        out = StringIO()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'degree_4.csv')
            call_command('enumerate', degree=4, format='csv', out=path, stdout=out)
            with open(path, encoding='utf-8') as fh:
                self.assertTrue(fh.read().startswith('degree,group,label,type,type_label'))
        self.assertIn('Wrote degree 4 report', out.getvalue())

    def test_save(self):
        """Test that --save stores the run with its totals"""
        err = StringIO()
        call_command('enumerate', degree=4, save=True, stdout=StringIO(), stderr=err)
        run = EnumerationRun.objects.get()
        self.assertEqual(run.totals, (10, 6, 7, 1, 10, 6))
        self.assertEqual(run.report['degree'], 4)
        self.assertIsNotNone(run.finished_at)
        self.assertIn(f'Saved run #{run.pk}', err.getvalue())

    def test_no_prune(self):
        """Test that --no-prune gives the same table"""
        pruned, full = StringIO(), StringIO()
        call_command('enumerate', degree=4, stdout=pruned)
        call_command('enumerate', degree=4, no_prune=True, stdout=full)
        self.assertEqual(pruned.getvalue(), full.getvalue())

    def test_degree_out_of_range(self):
        """Test that degree 12 is refused"""
        with self.assertRaises(CommandError):
            call_command('enumerate', degree=12, stdout=StringIO())

    def test_parallel_below_one_is_a_usage_error(self):
        """Test that enumerate, tables and summary refuse fewer than one worker"""
        for name, args in (('enumerate', {'degree': 4}), ('tables', {'degree': 4}), ('summary', {'max_degree': 3})):
            with self.subTest(command=name):
                with self.assertRaises(CommandError) as ctx:
                    call_command(name, parallel=0, stdout=StringIO(), **args)
                self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaisesMessage(CommandError, 'must be at least 1'):
            call_command('tables', '--degree=4', '--parallel=-1', stdout=StringIO())

    def test_parallel_option_is_honored(self):
        """Test that a single worker gives the ordinary report"""
        out = StringIO()
        call_command('enumerate', degree=4, parallel=1, stdout=out)
        self.assertIn('Degree 4 Hopf Galois structures', out.getvalue())


class TablesCommandTests(TestCase):
    def test_degree_4_matches(self):
        """Test that tables reports a match for degree 4 and can record it"""
        out = StringIO()
        call_command('tables', degree=4, save=True, stdout=out)
        self.assertIn('Degree 4 matches the golden table', out.getvalue())
        self.assertTrue(EnumerationRun.objects.get().golden_ok)

    def test_mismatch_fails(self):
        """Test that a differing golden table makes tables exit with status 1"""
        golden = load_golden_for(4)
        golden.rows[(3, 1)] = (1, 1, 1, 2)
        err = StringIO()
        with patch('hopfgalois.management.commands.tables.load_golden_for', return_value=golden):
            with self.assertRaises(CommandError) as ctx:
                call_command('tables', degree=4, stdout=StringIO(), stderr=err)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('k=3', err.getvalue())

    @override_settings(HGE_GOLDEN_DIR='/nonexistent/golden')
    def test_missing_golden(self):
        """Test that a missing golden table becomes a command error"""
        with self.assertRaises(CommandError) as ctx:
            call_command('tables', degree=4, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)


class VerifyCatalogCommandTests(TestCase):
    def test_basic(self):
        """Test that verify_catalog reports the degree 6 entries and types"""
        out = StringIO()
        call_command('verify_catalog', degree=6, stdout=out)
        self.assertIn('Degree 6: 16 entries verified (basic)', out.getvalue())
        self.assertIn('Types: C6, S3', out.getvalue())
        self.assertIn('Largest holomorph order 36; Max = 10', out.getvalue())

    def test_strong(self):
        """Test the strong check on degree 4"""
        out = StringIO()
        call_command('verify_catalog', degree=4, strong=True, stdout=out)
        self.assertIn('(strong)', out.getvalue())

    def test_strong_needs_allow_slow(self):
        """Test that strong verification above the limit exits with status 2"""
        with self.assertRaises(CommandError) as ctx:
            call_command('verify_catalog', degree=9, strong=True, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    @patch('hopfgalois.management.commands.verify_catalog.verify_catalog')
    def test_failures_exit_with_status_1(self, mock_verify):
        """Test that catalog failures are written to stderr"""
        mock_verify.return_value.ok = False
        mock_verify.return_value.failures = ['4T2: order 3, claimed 4']
        err = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('verify_catalog', degree=4, stdout=StringIO(), stderr=err)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('4T2: order 3, claimed 4', err.getvalue())


class SummaryCommandTests(TestCase):
    def test_totals_up_to_degree_7(self):
        """Test the summary totals for degrees 2 to 7"""
        out = StringIO()
        call_command('summary', max_degree=7, save=True, stdout=out)
        body = out.getvalue().splitlines()[2:]
        totals = [int(line.split('|')[5]) for line in body]
        self.assertEqual(totals, [1, 2, 10, 3, 15, 4])
        self.assertEqual(EnumerationRun.objects.count(), 6)


class CheckCommandTests(TestCase):
    def test_p2check(self):
        """Test the p = 3 witness check"""
        out = StringIO()
        call_command('p2check', p=3, stdout=out)
        self.assertIn('Hol(C9) has order 54', out.getvalue())
        self.assertIn('p = 3: witness checks passed', out.getvalue())

    def test_p5_needs_allow_large(self):
        """Test that p = 5 without --allow-large exits with status 2"""
        with self.assertRaises(CommandError) as ctx:
            call_command('p2check', p=5, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_example_8t3(self):
        """Test that the 8T3 dihedral example passes"""
        out = StringIO()
        call_command('example_8t3', stdout=out)
        self.assertIn('42 dihedral structures', out.getvalue())
        self.assertIn('8T3: 42 = 7 x 6 dihedral structures', out.getvalue())
