import pytest

from tournament_eh.catalog import (
    CYCLIC_TRIANGLE,
    D_5,
    DRAWN_D5_DENSE,
    DRAWN_D5_SPARSE,
    DRAWN_F6,
    DRAWN_H6,
    DRAWN_P7_MINUS,
    F_6,
    H_6,
    H_6_BAR,
    OBS_3,
    OBS_4,
    P_7,
    P_7_MINUS,
    catalog,
    catalog_ordered,
    catalog_tournament,
    check_drawings,
    d5_extension,
    names,
)
from tournament_eh.core import (
    OrderedGraph,
    reverse,
    reverse_order,
    tournament_from_backedges,
    transitive_tournament,
)
from tournament_eh.enumeration import is_isomorphic
from tournament_eh.errors import UnknownName


def test_drawings_agree_with_formulas() -> None:
    check_drawings()


def test_named_tournaments_are_regular_where_expected() -> None:
    assert CYCLIC_TRIANGLE.scores() == (1, 1, 1)
    assert D_5.scores() == (2,) * 5
    assert P_7.scores() == (3,) * 7
    assert sorted(P_7_MINUS.scores()) == [2, 2, 2, 3, 3, 3]


def test_d5_drawings_build_d5() -> None:
    for drawn in (DRAWN_D5_SPARSE, DRAWN_D5_DENSE):
        assert is_isomorphic(tournament_from_backedges(drawn), D_5)


def test_six_vertex_drawings() -> None:
    assert is_isomorphic(tournament_from_backedges(DRAWN_P7_MINUS), P_7_MINUS)
    assert is_isomorphic(tournament_from_backedges(DRAWN_H6), H_6)
    assert tournament_from_backedges(DRAWN_F6) == F_6


def test_h6_is_not_self_converse() -> None:
    assert H_6_BAR == reverse(H_6)
    assert not is_isomorphic(H_6, H_6_BAR)


def test_fourth_obstruction_mirrors_third() -> None:
    assert OBS_4 == reverse_order(OBS_3)
    assert OBS_4 == OrderedGraph.from_one_based(
        6, [(1, 3), (3, 5), (1, 4), (4, 6), (2, 6)]
    )


def test_catalog_names() -> None:
    assert catalog("D_5") == D_5
    assert catalog("TT_4") == transitive_tournament(4)
    assert catalog("D5_{1,3}") == H_6
    assert catalog("D5_13") == H_6
    assert catalog("D5_{}") == d5_extension([])
    assert "OBS_1" in names()


def test_catalog_typed_lookups() -> None:
    assert catalog_tournament("P_7") == P_7
    assert catalog_ordered("OBS_3") == OBS_3
    with pytest.raises(UnknownName):
        catalog_tournament("OBS_1")
    with pytest.raises(UnknownName):
        catalog_ordered("D_5")


def test_unknown_names() -> None:
    with pytest.raises(UnknownName):
        catalog("Q_9")
    with pytest.raises(UnknownName):
        catalog("D5_{7}")


def test_d5_extension_edges() -> None:
    t = d5_extension({2, 4})
    assert t.n == 6
    assert t.out_neighbours(5) == 0b01010
    assert t.induced(range(5)) == D_5
