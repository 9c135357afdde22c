from pathlib import Path

from django.conf import settings

DATA_DIR = Path(__file__).resolve().parent / "data"

DEFAULTS = {
    "HGE_CATALOG_PATH": DATA_DIR / "transitive_groups.txt",
    "HGE_GOLDEN_DIR": DATA_DIR / "golden",
    "HGE_ELEMENT_CAP": 5000,
    "HGE_STRONG_VERIFY_MAX_DEGREE": 8,
    "HGE_PARALLEL": 1,
}


def get(name):
    """Read an app setting, falling back to the built-in default."""
    if settings.configured:
        value = getattr(settings, name, None)
        if value not in (None, ""):
            return value
    return DEFAULTS[name]
