import pytest
from hypothesis import given

from deltaclosure.context import (FormalContext, bits, closure, derive_attributes, derive_objects, members,
                                  parse_csv, parse_fimi, sample_objects, support, to_fimi)
from deltaclosure.errors import ParseError

from conftest import contexts


def test_bits_roundtrip():
    assert bits([0, 3, 5]) == 0b101001
    assert list(members(0b101001)) == [0, 3, 5]
    assert bits([]) == 0


def test_toy_derivations(toy):
    abc = toy.itemset("abc")
    assert support(toy, abc) == 6
    assert toy.format_itemset(closure(toy, toy.itemset("d"))) == "a;b;d"
    assert derive_objects(toy, 0) == toy.all_objects
    # objects g1, g2 share exactly abcde
    assert derive_attributes(toy, 0b11) == toy.itemset("abcde")
    assert derive_attributes(toy, 0) == toy.all_attributes


def test_parse_fimi_basic():
    ctx = parse_fimi("0 2\n1\n\n0 1 2\n")
    assert ctx.n_objects == 4
    assert ctx.n_attributes == 3
    assert ctx.rows == (0b101, 0b010, 0, 0b111)
    assert ctx.attribute_names == ("0", "1", "2")


def test_parse_fimi_trailing_blank_lines_dropped():
    assert parse_fimi("0\n1\n\n\n").n_objects == 2


def test_parse_fimi_declared_universe():
    assert parse_fimi("0\n", n_attributes=4).n_attributes == 4
    with pytest.raises(ParseError):
        parse_fimi("5\n", n_attributes=3)


@pytest.mark.parametrize("text,line,col", [("0 1\n2 x\n", 2, 2), ("-1\n", 1, 1), ("0 1.5\n", 1, 2)])
def test_parse_fimi_errors_report_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_fimi(text)
    assert info.value.line == line
    assert info.value.column == col


def test_parse_fimi_empty():
    ctx = parse_fimi("")
    assert (ctx.n_objects, ctx.n_attributes) == (0, 0)


def test_parse_csv_binary_and_cross():
    ctx = parse_csv("a,b,c\n1,0,1\n0,1,1\n")
    assert ctx.attribute_names == ("a", "b", "c")
    assert ctx.rows == (0b101, 0b110)
    cross = parse_csv("a,b\nx,\n,×\n", mode="cross")
    assert cross.rows == (0b01, 0b10)


def test_parse_csv_errors():
    with pytest.raises(ParseError) as info:
        parse_csv("a,b\n1,0\n1\n")
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_csv("a,b\n1,2\n")
    assert (info.value.line, info.value.column) == (2, 2)
    with pytest.raises(ValueError):
        parse_csv("a\n1\n", mode="weird")


def test_from_rows_rejects_out_of_range():
    with pytest.raises(ValueError):
        FormalContext.from_rows([[3]], n_attributes=2)


def test_sample_objects(toy):
    sub = sample_objects(toy, 0b11)
    assert sub.n_objects == 2
    assert sub.object_names == ("g1", "g2")
    with pytest.raises(ValueError):
        sample_objects(toy, 1 << 10)


@given(contexts())
def test_fimi_roundtrip(ctx):
    back = parse_fimi(to_fimi(ctx), n_attributes=ctx.n_attributes)
    # trailing empty objects do not survive a text round trip
    n = len(ctx.rows)
    while n and ctx.rows[n - 1] == 0:
        n -= 1
    assert back.rows == ctx.rows[:n]


@given(contexts())
def test_galois_connection(ctx):
    for x in range(1 << ctx.n_attributes):
        c = closure(ctx, x)
        assert c & x == x
        assert closure(ctx, c) == c
        assert derive_objects(ctx, c) == derive_objects(ctx, x)
