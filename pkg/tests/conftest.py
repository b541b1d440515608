import json

import pytest

from setnim.games import build_game


@pytest.fixture
def g2_spec():
    # Four stacks where the middle pair co-occurs in every set; merges to a 3-cycle.
    return build_game(4, [[0, 3], [0, 1, 2], [1, 2, 3]], "g2")


@pytest.fixture
def ex75_spec():
    # Five-stack path game with an extra end-to-end move; a pointed complex.
    return build_game(5, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 4]], "ex75")


@pytest.fixture
def g2_file(tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(
        json.dumps({"n": 4, "move_sets": [[0, 3], [0, 1, 2], [1, 2, 3]], "id": "g2"})
    )
    return str(path)


@pytest.fixture
def ex75_file(tmp_path):
    path = tmp_path / "ex75.json"
    path.write_text(
        json.dumps(
            {"n": 5, "move_sets": [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 4]], "id": "ex75"}
        )
    )
    return str(path)
