from unittest.mock import patch

from django.apps import apps
from django.test import SimpleTestCase, override_settings

from hopfgalois.apps import HopfGaloisConfig


class AppConfigTests(SimpleTestCase):
    def test_app_is_installed(self):
        """Test that the app registers under its label"""
        config = apps.get_app_config('hopfgalois')
        self.assertIsInstance(config, HopfGaloisConfig)
        self.assertEqual(config.verbose_name, 'Hopf Galois structures')

    def test_ready_is_quiet_with_shipped_data(self):
        """Test that ready logs nothing when the bundled data is in place"""
        with patch('hopfgalois.apps.logger') as mock_logger:
            apps.get_app_config('hopfgalois').ready()
        mock_logger.warning.assert_not_called()

    @override_settings(HGE_CATALOG_PATH='/nonexistent/catalog.txt', HGE_GOLDEN_DIR='/nonexistent/golden')
    def test_ready_warns_about_missing_paths(self):
        """Test that ready warns once per missing data path"""
        with self.assertLogs('hopfgalois.apps', level='WARNING') as logs:
            apps.get_app_config('hopfgalois').ready()
        self.assertEqual(len(logs.output), 2)
        self.assertIn('HGE_CATALOG_PATH', logs.output[0])
        self.assertIn('HGE_GOLDEN_DIR', logs.output[1])
