import pytest

from cantortopo.finite_map import FiniteStageMap, TableError, table_check_nowhere_open, table_check_open
from cantortopo.transducers import NowhereStatus, OpenStatus
from cantortopo.words import Point

# x0 -> 0x, x1 -> 1x: a bijection at depth 2, open at any resolution
SWAP = FiniteStageMap.from_table(2, {"00": "00", "01": "10", "10": "01", "11": "11"}, 2, 1, "swap")
# both halves land close together: not open once resolution sees the clash
PINCH = FiniteStageMap.from_table(1, {"0": "00", "1": "001"}, 2, 1, "pinch")


def test_inner_rows_are_longest_common_prefixes():
    m = FiniteStageMap.from_table(2, {"00": "010", "01": "011", "10": "1", "11": "10", "0": "01"}, 3, 1)
    assert m.output("0") == "01"
    assert m.output("") == ""
    assert m.image("01") == Point.parse("011(0)")


def test_table_validation():
    with pytest.raises(TableError):
        FiniteStageMap.from_table(1, {"0": "1", "1": "0", "": "1"}, 1, 1)
    with pytest.raises(TableError):
        FiniteStageMap.from_table(2, {"0": "1"}, 1, 1)
    with pytest.raises(TableError):
        FiniteStageMap.from_table(1, {"0": "1"}, 1, 3)


def test_openness_on_small_tables():
    assert table_check_open(SWAP).status == OpenStatus.OPEN
    assert SWAP.is_injective()
    v = table_check_open(PINCH)
    assert (v.status, v.witness) == (OpenStatus.NOT_OPEN, "0")


def test_bundled_table(model):
    m = model.tables["nowhere"]
    assert (m.depth, m.resolution, m.stage) == (7, 6, 3)
    assert m.is_injective()
    v = table_check_nowhere_open(m)
    assert (v.status, v.depth) == (NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH, 3)
    # below the stage the map separates points again
    assert table_check_open(m, m.leaves_under("0010001")).status == OpenStatus.OPEN


def test_nowhere_open_fails_on_open_tables():
    v = table_check_nowhere_open(SWAP)
    assert (v.status, v.witness) == (NowhereStatus.NOT_NOWHERE_OPEN, "")
    with pytest.raises(TableError):
        table_check_nowhere_open(SWAP, {"000"})
