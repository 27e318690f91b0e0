import json

import numpy as np
import pytest

from lintree.tree_model import LinearTreeSpec

FIG4 = LinearTreeSpec.of([[1, 1], [3, 2], [1, 1]], [0, 0])
FIG5 = LinearTreeSpec.of([[1, 1], [2, 1], [1, 1]], [0, 1])
K13 = LinearTreeSpec.of([[1, 1, 1]])
STAR_FIG3 = LinearTreeSpec.of([[3, 2, 1]])

# the tables exactly as drawn, rows top to bottom
FIG4_TABLE = """
. 1 ^1 1 . . .
1 ^1 1 ^1 1 ^0 1
. 1 ^1 1 . . .
= 1 3 3 3 1 0 1
"""

FIG5_TABLE = """
. . 1 ^1 1 .
. 1 ^1 1 ^0 1
1 . . . . .
. . 1 ^1 1 .
= 1 1 3 3 2 1
"""


def path_spec(n):
    """P_n as a one-arm star (n >= 2)."""
    return LinearTreeSpec.of([[n - 1]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def spec_file(tmp_path):
    def write(spec, name="tree.json"):
        p = tmp_path / name
        p.write_text(json.dumps(spec.to_json()))
        return str(p)

    return write
