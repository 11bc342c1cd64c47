import random

import pytest

from softc.truthtable import Row, TruthTable

COMPLEX_MAP_TEXT = """\
# complex mapping: Q = 1 on rows 001, 101, 111
A B C | Q
0 0 0 | 0
0 0 1 | 1
0 1 0 | 0
0 1 1 | 0
1 0 0 | 0
1 0 1 | 1
1 1 0 | 0
1 1 1 | 1
"""

TWO_FINGER_TEXT = """\
# two-finger mapping: Q = 1 only at A=B=1, C=D=0
A B C D | Q
""" + "\n".join(
    f"{i >> 3 & 1} {i >> 2 & 1} {i >> 1 & 1} {i & 1} | {1 if i == 0b1100 else 0}"
    for i in range(16)
) + "\n"

INVERT_TEXT = """\
A | Q
0 | 1
1 | 0
"""


def make_table(n: int, outputs: str, names=None) -> TruthTable:
    """Build a single-output table from a 2^n output symbol string."""
    assert len(outputs) == 2 ** n
    names = tuple(names) if names else tuple("ABCDEFGH"[:n])
    rows = tuple(
        Row(
            tuple((i >> (n - 1 - k)) & 1 for k in range(n)),
            (outputs[i],),
        )
        for i in range(2 ** n)
    )
    return TruthTable(names, ("Q",), rows)


def random_table(rng: random.Random, n: int, dont_cares: bool = False) -> TruthTable:
    symbols = "01X" if dont_cares else "01"
    return make_table(n, "".join(rng.choice(symbols) for _ in range(2 ** n)))


@pytest.fixture
def complex_table():
    from softc.truthtable import parse_truth_table

    return parse_truth_table(COMPLEX_MAP_TEXT)


@pytest.fixture
def two_finger_table():
    from softc.truthtable import parse_truth_table

    return parse_truth_table(TWO_FINGER_TEXT)
