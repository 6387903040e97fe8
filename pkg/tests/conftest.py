import json
import random

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.core.config import settings


@pytest.fixture(scope="function")
def client():
    """create a test client for the api"""
    with TestClient(app, base_url="http://localhost:8000") as test_client:
        yield test_client


@pytest.fixture(scope="function")
def rng():
    """seeded random source for property checks"""
    return random.Random(settings.K3LAT_SEED)


@pytest.fixture(scope="function")
def lattice_file(tmp_path):
    """write a lattice JSON file and return its path"""

    def write(gram, label="", name="lattice.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"label": label, "gram": gram}))
        return str(path)

    return write
