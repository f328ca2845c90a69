import pytest

from nildom.words import Comm, Gen, Pow, Seq, UnknownGenerator, WordSyntaxError, gen_name, parse, split_top


def test_parse_basic_forms():
    assert parse("x", 2) == Gen(0)
    assert parse("y^-2", 2) == Pow(Gen(1), -2)
    assert parse("y^(-2)", 2) == Pow(Gen(1), -2)
    assert parse("x*y", 2) == Seq((Gen(0), Gen(1)))
    assert parse("1", 2) == Seq(())
    assert parse("", 2) == Seq(())


def test_brackets_are_left_normed():
    assert parse("[x,y,y]", 2) == Comm((Gen(0), Gen(1), Gen(1)))
    assert parse("[[x,y],y]", 2) == Comm((Comm((Gen(0), Gen(1))), Gen(1)))


def test_generator_names():
    assert parse("x3", 3) == Gen(2)
    assert parse("w", 4) == Gen(3)
    assert gen_name(0, 2) == "x"
    assert gen_name(4, 5) == "x5"
    with pytest.raises(UnknownGenerator):
        parse("z", 2)
    with pytest.raises(UnknownGenerator):
        parse("x4", 3)


@pytest.mark.parametrize("bad", ["x^", "[x]", "[x,y", "x)", "x^y", "2", "x $"])
def test_syntax_errors(bad):
    with pytest.raises(WordSyntaxError):
        parse(bad, 2)


def test_split_top_ignores_inner_commas():
    assert split_top("x^2, [x,y]^3, (x y)") == ["x^2", "[x,y]^3", "(x y)"]
    assert split_top("") == []
    assert split_top(" x ,, y") == ["x", "y"]
