import pathlib

import pytest
from fastapi.testclient import TestClient

from mlm_server.app import create_app
from mlm_server.scoring import MaskScorer

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
TINY_MODEL = str(FIXTURES / "tiny-bert")


@pytest.fixture(scope="session")
def scorer():
    return MaskScorer(TINY_MODEL)


@pytest.fixture(scope="session")
def client():
    app = create_app(model_name=TINY_MODEL)
    with TestClient(app) as test_client:
        yield test_client
