import pytest
from hypothesis import settings

from cgl.presentation import standard_catalog

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

CATALOG = standard_catalog()
CATALOG_IDS = [P.name for P in CATALOG]


@pytest.fixture(params=CATALOG, ids=CATALOG_IDS)
def catalog_entry(request):
    return request.param
