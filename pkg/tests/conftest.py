import json

import pytest

from closedgeo import FIXTURES
from closedgeo.modelio import model_to_dict


@pytest.fixture
def models():
    return FIXTURES


@pytest.fixture
def model_files(tmp_path):
    paths = {}
    for name, model in FIXTURES.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(model_to_dict(model)))
        paths[name] = p
    return paths
