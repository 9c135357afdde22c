import logging
from pathlib import Path

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class HopfGaloisConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hopfgalois'
    verbose_name = 'Hopf Galois structures'

    def ready(self):
        from . import conf

        for name in ("HGE_CATALOG_PATH", "HGE_GOLDEN_DIR"):
            path = Path(conf.get(name))
            if not path.exists():
                logger.warning("%s points at %s, which does not exist", name, path)
