import pytest

from kslab.catalog import (
    CATALOG, format_direction_set, gen_coplanar_fan, gen_peres_33, gen_single_triad, generate,
    parse_direction_set,
)
from kslab.contextual import requires_multiple_contexts
from kslab.errors import DomainError, ParseError
from kslab.geometry import canonicalize, rank, same_direction
from kslab.ks import Status, build_structure, search_colorings


def test_single_triad():
    d = gen_single_triad()
    assert len(d) == 3
    assert len(build_structure(d).triads) == 1
    assert search_colorings(d, True).count == 3


@pytest.mark.parametrize("k", [2, 3, 5, 10, 17])
def test_coplanar_fan(k):
    d = gen_coplanar_fan(k)
    assert len(d) == k
    assert rank(d.rays) == 2
    assert build_structure(d).triads == ()
    assert search_colorings(d).status is Status.SAT
    assert not requires_multiple_contexts(d)
    assert any(c.b != 0 for r in d for c in r) or k < 7


def test_coplanar_fan_too_small():
    with pytest.raises(DomainError):
        gen_coplanar_fan(1)


def test_peres_33_shape():
    d = gen_peres_33()
    assert len(d) == 33
    for r in d:
        assert canonicalize(r.components) == r
        assert all(c.a in (0, 1, -1) and c.b in (0, 1, -1) and not (c.a and c.b) for c in r)
    for i in range(33):
        for j in range(i + 1, 33):
            assert not same_direction(d[i], d[j])


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_generators_stable(name):
    assert format_direction_set(generate(name)) == format_direction_set(generate(name))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_expected_status(name):
    entry = CATALOG[name]
    assert search_colorings(entry.generator()).status.value == entry.expected_status


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_round_trip(name):
    d = generate(name)
    back = parse_direction_set(format_direction_set(d), d.name)
    assert back == d


def test_peres_minus_any_ray_stays_sat():
    d = gen_peres_33()
    counts = [search_colorings(d.without(i), True).count for i in range(33)]
    assert all(c > 0 for c in counts)


def test_parse_comments_and_blank_lines():
    text = "# header\n\n1,0 0,0 0,0  # x axis\n0,0 1/2,0 0,1/2\n"
    d = parse_direction_set(text)
    assert len(d) == 2
    assert d[1].to_text() == "0,0 1,0 0,1"


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("1,0 0,0\n", 1, 1),
        ("1,0 0,0 0,0\n1,0 x,0 0,0\n", 2, 5),
        ("0,0 0,0 0,0\n", 1, 1),
        ("1,0 0,0 0,0\n2,0 0,0 0,0\n", 2, 1),
        ("  1,0 0,0 0,1/0\n", 1, 11),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_direction_set(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_generate_unknown():
    with pytest.raises(KeyError):
        generate("nope")
    assert len(generate("coplanar-fan-4")) == 4
