from django.contrib.admin.sites import AdminSite
from django.contrib.auth import get_user_model
from django.test import Client, TestCase
from django.urls import reverse

from ..admin import EnumerationRunAdmin
from ..models import EnumerationRun

User = get_user_model()


class EnumerationRunAdminTest(TestCase):
    def setUp(self):
        self.admin_user = User.objects.create_superuser(
            username='admin',
            email='admin@example.com',
            password='adminpassword123'
        )
        self.client = Client()
        self.client.login(username='admin', password='adminpassword123')
        self.model_admin = EnumerationRunAdmin(EnumerationRun, AdminSite())

        self.run1 = EnumerationRun.objects.create(degree=4, total=10, golden_ok=None)
        self.run2 = EnumerationRun.objects.create(degree=6, total=15, golden_ok=False)

    def test_mark_golden_verified(self):
        """Test the action that marks runs as matching the golden tables"""
        queryset = EnumerationRun.objects.filter(pk__in=[self.run1.pk, self.run2.pk])
        self.model_admin.mark_golden_verified(None, queryset)
        self.assertEqual(EnumerationRun.objects.filter(golden_ok=True).count(), 2)

    def test_clear_golden_status(self):
        """Test the action that resets the golden comparison"""
        self.model_admin.clear_golden_status(None, EnumerationRun.objects.filter(pk=self.run2.pk))
        self.run2.refresh_from_db()
        self.assertIsNone(self.run2.golden_ok)

    def test_action_descriptions(self):
        """Test that both actions carry a short description"""
        self.assertIn('golden', EnumerationRunAdmin.mark_golden_verified.short_description)
        self.assertIn('golden', EnumerationRunAdmin.clear_golden_status.short_description)

    def test_changelist(self):
        """Test that the admin changelist lists the runs and filters by degree"""
        url = reverse('admin:hopfgalois_enumerationrun_changelist')
        response = self.client.get(url)
        self.assertEqual(response.status_code, 200)
        self.assertContains(response, '15')
        response = self.client.get(url, {'degree': 4})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(list(response.context['cl'].result_list), [self.run1])

    def test_report_is_read_only(self):
        """Test that the stored report cannot be edited from the admin"""
        self.assertIn('report', self.model_admin.readonly_fields)
