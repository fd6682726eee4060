import pytest
from hypothesis import given

from quiverfin.algebra import AlgebraSpec
from quiverfin.classifier import classify
from quiverfin.core import DimVector, Quiver
from quiverfin.euclid import verify_witness
from quiverfin.formats import (ParseError, format_witness, parse_algebra, parse_setting, parse_witness,
                               serialize_algebra, serialize_setting)
from quiverfin.shapes import setting

from strategies import settings_


class TestParseSetting:
    def test_kronecker(self):
        s = parse_setting("vertices: a b\narrow: a b\narrow: a b\ndim: a=1 b=1")
        assert s.quiver == Quiver(("a", "b"), (("a", "b"), ("a", "b")))
        assert s.dim == DimVector({"a": 1, "b": 1})

    def test_loop(self):
        s = parse_setting("vertices: x\narrow: x x\ndim: x=1")
        assert s.quiver.loops == (1,)

    def test_comments_and_blank_lines(self):
        text = "# header\n\nvertices: a  b # two\narrow: a b\n  dim: a=2   b=0\n"
        assert parse_setting(text).values == (2, 0)

    def test_dim_split_over_lines(self):
        assert parse_setting("vertices: a b\ndim: a=1\ndim: b=2").values == (1, 2)

    @pytest.mark.parametrize("text,line,fragment", [
        ("dim: a=1", 1, "before 'vertices'"),
        ("vertices: a\nedge: a a\ndim: a=1", 2, "unknown directive"),
        ("vertices: a\narrow: a b\ndim: a=1", 2, "undeclared vertex 'b'"),
        ("vertices: a\ndim: b=1", 2, "undeclared vertex 'b'"),
        ("vertices: a\ndim: a=-1", 2, "negative"),
        ("vertices: a b\ndim: a=1", 0, "missing dimension for b"),
        ("vertices: a\ndim: a=x", 2, "not a natural number"),
        ("vertices: a\ndim: a", 2, "name=value"),
        ("vertices: a\narrow: a\ndim: a=1", 2, "source and a target"),
        ("vertices: a-b\ndim: a=1", 1, "bad vertex name"),
        ("vertices: a a", 1, "duplicate"),
        ("vertices: a\nvertices: b", 2, "twice"),
        ("vertices: a\ndim: a=1 a=2", 2, "given twice"),
        ("vertices a", 1, "directive"),
        ("", 0, "no 'vertices'"),
    ])
    def test_errors(self, text, line, fragment):
        with pytest.raises(ParseError) as err:
            parse_setting(text)
        assert err.value.lineno == line
        assert fragment in str(err.value)

    @given(settings_(max_vertices=5, max_arrows=6, max_value=9))
    def test_roundtrip(self, s):
        text = serialize_setting(s)
        assert parse_setting(text) == s
        assert serialize_setting(parse_setting(text)) == text


class TestParseAlgebra:
    def test_one_block(self):
        assert parse_algebra("blocks: 1\nrank: 2") == AlgebraSpec((1,), ((2,),))

    def test_two_blocks(self):
        assert parse_algebra("blocks: 2 1\nrank: 0 1\nrank: 1 0") == AlgebraSpec((2, 1), ((0, 1), (1, 0)))

    @pytest.mark.parametrize("text,fragment", [
        ("blocks: 1\nrank: 1 1", "expected 1"),
        ("blocks: 1 1\nrank: 1 1", "1 rank rows for 2 blocks"),
        ("rank: 1", "before 'blocks'"),
        ("blocks: 0\nrank: 0", "positive"),
        ("blocks: 1\nrank: -1", "negative"),
        ("blocks: 1\nsize: 1", "unknown directive"),
    ])
    def test_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse_algebra(text)

    def test_roundtrip(self):
        spec = AlgebraSpec((2, 1, 1), ((1, 1, 1), (1, 0, 0), (0, 0, 0)))
        assert parse_algebra(serialize_algebra(spec)) == spec


class TestWitnessFormat:
    def test_kronecker_block(self):
        s = setting("ab", ["ab", "ab"], (1, 1))
        text = format_witness(classify(s).witness, s)
        assert text == ("WITNESS type=A~1 m=1\nvertex a -> c0 h=1\nvertex b -> c1 h=1\n"
                        "arrow a b index=0\narrow a b index=1\n")

    @given(settings_(max_vertices=6, max_arrows=7, max_value=3))
    def test_printed_witness_reparses_and_validates(self, s):
        verdict = classify(s)
        if verdict.infinite:
            text = format_witness(verdict.witness, s)
            again = parse_witness("INFINITE\n" + text, s)
            assert verify_witness(s, again) == []
            assert format_witness(again, s) == text

    def test_tampered_h_is_invalid(self):
        s = setting("cpqrs", ["pc", "qc", "rc", "sc"], (2, 1, 1, 1, 1))
        text = format_witness(classify(s).witness, s).replace("h=2", "h=1")
        assert verify_witness(s, parse_witness(text, s))

    def test_wrong_arrow(self):
        s = setting("ab", ["ab", "ab"], (1, 1))
        text = "WITNESS type=A~1 m=1\nvertex a -> c0 h=1\nvertex b -> c1 h=1\narrow b a index=0\n"
        with pytest.raises(ParseError, match="ambient arrow 0"):
            parse_witness(text, s)

    def test_missing_block(self):
        with pytest.raises(ParseError, match="no WITNESS"):
            parse_witness("FINITE\n", setting("a", [], (1,)))
