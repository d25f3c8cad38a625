import random

import pytest
from hypothesis import given

from horncalc.formats import (
    FormatError,
    document_codec,
    get_codec,
    parse_calculus,
    parse_gsequent,
    parse_proof,
    print_calculus,
    print_gsequent,
    print_proof,
    print_space,
)
from horncalc.generators import random_g3i_proof
from horncalc.lattice import implicate

from conftest import FIXTURES, fixture_text
from strategies import gsequents

CALCS = ["g3i_explicit.calc", "g3i_implicit.calc", "four_rule.calc"]
PROOFS = sorted(p.name for p in FIXTURES.iterdir() if p.name.endswith(".proof"))

HEAD = "format horncalc-calculus 1\nalphabet a b\n"


@pytest.mark.parametrize("name", CALCS)
def test_calculus_round_trip(name):
    text = fixture_text(name)
    c = parse_calculus(text)
    assert print_calculus(c) == text
    assert parse_calculus(print_calculus(c)) == c


@pytest.mark.parametrize("name", PROOFS)
def test_proof_round_trip(name):
    text = fixture_text(name)
    assert document_codec(text) == "g3i"
    p = parse_proof(text)
    assert print_proof(p, "g3i") == text


@given(gsequents(max_vertices=4, max_edges=6))
def test_gsequent_round_trip(g):
    text = print_gsequent(g, "atom")
    assert parse_gsequent(text) == g


def test_random_proofs_round_trip(g3i_explicit):
    rng = random.Random(1)
    for _ in range(10):
        p = random_g3i_proof(rng, g3i_explicit, max_depth=5)
        if p is not None:
            assert parse_proof(print_proof(p, "g3i")) == p


def test_grammar_blocks_round_trip():
    text = HEAD + "grammar G1\n  a -> b\n  inv(a) -> inv(b)\nend\nrule i initial relation=any\n  vertex w\n  vertex u\n  edge w u grammar=G1 start=a\n"
    c = parse_calculus(text)
    assert parse_calculus(print_calculus(c)) == c


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty document"),
        ("format horncalc-calculus 2\n", "unsupported"),
        ("format other 1\n", "expected 'format"),
        (HEAD, "at least one rule"),
        ("format horncalc-calculus 1\nrule h horn type=a dir=forward rhs=eps\n", "alphabet"),
        (HEAD + "rule h horn type=a dir=sideways rhs=eps\n", "dir must be"),
        (HEAD + "rule i initial relation=nosuch\n  vertex w\n", "nosuch"),
        (HEAD + "rule h horn type=a dir=forward\n", "missing rhs="),
        (HEAD + "bogus\n", "unknown record"),
        (HEAD + "grammar G1\n  a -> b\n", "missing 'end'"),
        (HEAD + "rule h horn type=z dir=forward rhs=eps\n", "alphabet"),
    ],
)
def test_calculus_errors(text, fragment):
    with pytest.raises(FormatError) as e:
        parse_calculus(text)
    assert fragment in str(e.value)


def test_error_positions():
    with pytest.raises(FormatError) as e:
        parse_calculus(HEAD + "rule h horn type=a dir=sideways rhs=eps\n")
    assert e.value.line == 3


def test_open_grammar_needs_auto_close():
    text = HEAD + "grammar G1\n  a -> b\nend\nrule i initial relation=any\n  vertex w\n  vertex u\n  edge w u grammar=G1 start=a\n"
    with pytest.raises(FormatError):
        parse_calculus(text)
    c = parse_calculus(text, auto_close=True)
    assert c.rule("i") is not None


def test_codecs():
    with pytest.raises(FormatError):
        get_codec("nosuch")
    g3i = get_codec("g3i")
    text = g3i.format(g3i.parse("p, p -> q => q"))
    assert g3i.parse(text) == g3i.parse("p, p -> q => q")


def test_proof_errors():
    with pytest.raises(FormatError):
        parse_proof("format horncalc-proof 1\n")
    with pytest.raises(FormatError):
        parse_proof("format horncalc-proof 1\ncodec atom\nstep s0 rule=x\n  vertex w 1\n")


def test_space_listing(example_calc):
    text = print_space(implicate(example_calc))
    assert text.startswith("format horncalc-space 1")
    assert "f(A,{h1,h2,h3})" in text
