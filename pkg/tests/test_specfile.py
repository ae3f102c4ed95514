from pathlib import Path as FsPath

import pytest

from selfsim.automaton import validate_automaton
from selfsim.errors import (
    JunctionMismatchError,
    RestrictionVertexMismatchError,
    SpecSyntaxError,
    UnknownSymbolError,
)
from selfsim.graphs import Path
from selfsim.infinite_paths import BiInfinitePath, LeftInfinitePath, RightInfinitePath
from selfsim.nucleus import compute_nucleus
from selfsim.specfile import format_path, format_spec, parse_path, parse_spec, spec_of_automaton

SPECS = FsPath(__file__).resolve().parent.parent / "specs"


def read(name):
    return (SPECS / name).read_text()


def test_parse_ex310_roundtrip():
    spec = parse_spec(read("ex310.ss"))
    aut = spec.automaton()
    assert validate_automaton(aut) == []
    nuc = compute_nucleus(aut)
    assert len(nuc) == 6
    # parse . format is the identity on SpecFile; format . parse idempotent
    text = format_spec(spec)
    assert parse_spec(text) == spec
    assert format_spec(parse_spec(text)) == text


def test_parse_basilica():
    spec = parse_spec(read("basilica.ss"))
    aut = spec.automaton()
    assert validate_automaton(aut) == []
    nuc = compute_nucleus(aut)
    # see the decisions notes: the minimal core has 14 classes, not 12
    assert len(nuc) == 14


def test_empty_generators_section():
    spec = parse_spec("[graph]\nvertex v\nedge 0 : v -> v\n")
    aut = spec.automaton()
    assert validate_automaton(aut) == []
    nuc = compute_nucleus(aut)
    assert nuc.state_names() == ["v"]


def test_spec_syntax_errors_carry_position():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("[graph]\nvertex v\nedge oops\n")
    assert info.value.line == 3
    with pytest.raises(SpecSyntaxError):
        parse_spec("vertex v\n")
    with pytest.raises(UnknownSymbolError):
        parse_spec("[graph]\nvertex v\nedge 0 : v -> v\n"
                   "[generator a : v -> v]\n0 -> 0 | zz\n").automaton()


def test_misdeclared_unit_restriction_is_caught():
    # b|_3 must be the unit at s(3) = v; declaring it at w is a violation
    text = read("ex310.ss").replace("3 -> 1 | v", "3 -> 1 | w")
    aut = parse_spec(text).automaton()
    assert any(isinstance(v, RestrictionVertexMismatchError) for v in aut.violations)


def test_options_section_bounds():
    spec = parse_spec("[graph]\nvertex v\nedge 0 : v -> v\n[options]\nmax_states 123\n")
    assert spec.bounds().max_states == 123


def test_spec_of_automaton_roundtrip(ex310):
    spec = spec_of_automaton(ex310)
    text = format_spec(spec)
    again = parse_spec(text)
    aut = again.automaton()
    assert validate_automaton(aut) == []
    assert len(compute_nucleus(aut)) == 6


def test_parse_path_kinds(ex310):
    g = ex310.graph
    p = parse_path(g, "2.4.2.3.1.2")
    assert isinstance(p, Path) and p.edges == tuple("242312")
    left = parse_path(g, "(1)^inf")
    assert left == LeftInfinitePath.make(g, ["1"], [])
    left2 = parse_path(g, "(1)^inf . 2.4")
    assert left2 == LeftInfinitePath.make(g, ["1"], ["2", "4"])
    right = parse_path(g, "4 . (1)^inf", kind="right")
    assert right == RightInfinitePath.make(g, ["4"], ["1"])
    bi = parse_path(g, "(2.3)^inf . 1 . (1)^inf @ 0")
    assert bi == BiInfinitePath.make(g, ["2", "3"], ["1"], ["1"], 0)
    bi2 = parse_path(g, "(2.3)^inf . (2.3)^inf @ 2")
    assert bi2 == BiInfinitePath.make(g, ["2", "3"], [], ["2", "3"], 2)


def test_parse_path_junction_errors(ex310):
    g = ex310.graph
    with pytest.raises(JunctionMismatchError):
        parse_path(g, "(1.2)^inf")  # s(2) = w != r(1) = v at the seam
    parse_path(g, "(2.3)^inf")  # valid cycle at v
    with pytest.raises(SpecSyntaxError):
        parse_path(g, "")
    with pytest.raises(SpecSyntaxError):
        parse_path(g, "(1)^inf . (1)^inf . (1)^inf")


def test_format_path(ex310):
    g = ex310.graph
    assert format_path(Path.of(g, ["3", "2", "3"])) == "3.2.3"
    assert format_path(parse_path(g, "(1)^inf . 2.4")) == "(1)^inf . 2.4"
