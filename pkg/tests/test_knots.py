import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonshine.knots import (
    CayleyTable,
    ColourSet,
    DiagramError,
    GroupTableError,
    PDFormatError,
    bundled_knots,
    count_colourings,
    count_homs,
    count_surjective_flag,
    from_pd_code,
    load_group,
    load_knot,
    parse_cayley_csv,
    parse_pd,
)

from oracles import brute_force_homs, three_colourings

KNOTS = ["unknot", "unknot_kink", "unknot_twisted", "trefoil", "trefoil_kink", "figure_eight"]
GROUPS = ["s3", "z3", "q8"]
REIDEMEISTER_PAIRS = [("unknot", "unknot_kink"), ("unknot", "unknot_twisted"), ("trefoil", "trefoil_kink")]


def as_tuples(d):
    return [(c.over, c.under_in, c.under_out, c.sign) for c in d.crossings]


def oracle_homs(d, g, colours=None):
    colours = range(g.order) if colours is None else colours
    if not d.crossings:
        return len(list(colours)), 0
    mul = [list(row) for row in g.table]
    inv = [g.inv(a) for a in range(g.order)]
    return brute_force_homs(as_tuples(d), d.arc_count, mul, inv, list(colours))


def test_bundled_corpus():
    assert set(KNOTS) <= set(bundled_knots())


@pytest.mark.parametrize(
    "name,expected", [("unknot", 3), ("unknot_kink", 3), ("unknot_twisted", 3), ("trefoil", 9), ("trefoil_kink", 9), ("figure_eight", 3)]
)
def test_three_colourings(name, expected):
    d = load_knot(name)
    assert count_colourings(d) == expected
    if d.crossings:
        assert three_colourings(as_tuples(d), d.arc_count) == expected


@pytest.mark.parametrize("name", KNOTS)
@pytest.mark.parametrize("group", GROUPS)
def test_homs_match_brute_force(name, group):
    d, g = load_knot(name), load_group(group)
    assert count_surjective_flag(d, g) == oracle_homs(d, g)


@pytest.mark.parametrize("a,b", REIDEMEISTER_PAIRS)
@pytest.mark.parametrize("group", GROUPS)
def test_reidemeister_pairs_agree(a, b, group):
    g = load_group(group)
    assert count_homs(load_knot(a), g) == count_homs(load_knot(b), g)


@pytest.mark.parametrize("a,b", REIDEMEISTER_PAIRS)
def test_reidemeister_pairs_colourings(a, b):
    assert count_colourings(load_knot(a)) == count_colourings(load_knot(b))


@pytest.mark.parametrize("group", GROUPS)
def test_unknot_counts_group_order(group):
    g = load_group(group)
    assert count_homs(load_knot("unknot"), g) == g.order


def test_s3_hom_counts():
    g = load_group("s3")
    assert count_homs(load_knot("trefoil"), g) == 12
    assert count_homs(load_knot("figure_eight"), g) == 6


def test_identity_only_colours():
    g = load_group("s3")
    assert count_surjective_flag(load_knot("trefoil"), g, ColourSet(g, (0,))) == (1, 0)


@given(st.sampled_from(KNOTS[1:]), st.randoms(use_true_random=False))
@settings(max_examples=30, deadline=None)
def test_relabel_invariance(name, rnd):
    d = load_knot(name)
    perm = list(range(d.arc_count))
    rnd.shuffle(perm)
    g = load_group("s3")
    assert count_homs(d.relabel(perm), g) == count_homs(d, g)


@pytest.mark.parametrize("name", KNOTS)
def test_text_round_trip_and_mirror(name):
    d = load_knot(name)
    assert parse_pd(d.to_text()) == d
    assert count_colourings(d.mirror()) == count_colourings(d)


def test_from_pd_code_trefoil():
    d = from_pd_code([(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)])
    assert d.arc_count == 3
    assert count_colourings(d) == 9


# parsing errors ------------------------------------------------------------------------


def test_pd_error_reports_line():
    text = "# header\nX+ over=0 in=1 out=2\nY over=1\n"
    with pytest.raises(PDFormatError) as exc:
        parse_pd(text)
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "text",
    ["", "X+ over=0 in=1\n", "X+ over=0 in=1 out=x\n", "X+ over=0 in=0 out=1 over=1\n", "unknot\nX+ over=0 in=0 out=0\n"],
)
def test_pd_malformed(text):
    with pytest.raises(PDFormatError):
        parse_pd(text)


def test_diagram_inconsistent():
    with pytest.raises(DiagramError):
        parse_pd("X+ over=0 in=1 out=2\nX+ over=2 in=1 out=0\nX+ over=1 in=2 out=1\n")
    with pytest.raises(DiagramError):
        parse_pd("X+ over=0 in=1 out=5\n")


def test_cayley_validation():
    with pytest.raises(GroupTableError):
        parse_cayley_csv("order=2\n0,1\n0,1\n")
    with pytest.raises(GroupTableError):
        parse_cayley_csv("0,1\n1,0\n")
    with pytest.raises(GroupTableError):
        parse_cayley_csv("order=2\n0,1\n")
    with pytest.raises(GroupTableError):
        parse_cayley_csv("order=2\n0,a\n1,0\n")


def test_cayley_round_trip():
    g = load_group("q8")
    assert parse_cayley_csv(g.to_csv()).table == g.table
    assert g.order == 8


def test_from_permutations_matches_bundled_s3():
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    g = CayleyTable.from_permutations(perms)
    d = load_knot("trefoil")
    assert count_homs(d, g) == count_homs(d, load_group("s3"))


def test_colour_set_must_be_closed():
    g = load_group("s3")
    with pytest.raises(ValueError):
        ColourSet(g, (1, 2))


def test_unknown_knot():
    with pytest.raises(FileNotFoundError):
        load_knot("no_such_knot")
