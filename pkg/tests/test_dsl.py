import pathlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinduct.dsl import parse_spec, print_spec
from coinduct.errors import ArityError, SpecError, UndeclaredNameError

CORPUS = sorted((pathlib.Path(__file__).parent / "corpus").glob("*.cx"))


def test_corpus_size():
    assert len(CORPUS) == 20


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    spec = parse_spec(path.read_text())
    text = print_spec(spec)
    again = parse_spec(text)
    assert again == spec
    assert print_spec(again) == text


def test_dihedral_spec():
    spec = parse_spec("group G = semidirect_Z_Z2\nsubgroup H = Z_factor\n"
                      "system b = full_shift(2, Z)\nsystem co = coinduce(b, H, G)\n"
                      "tuple T = [prod{(0, 0): cyl{0: 1}}]\n"
                      "indep system=co tuple=T pool=ball(2)\n")
    assert spec.decl("G").expr.name == "semidirect_Z_Z2"
    assert spec.verb.name == "indep"


@pytest.mark.parametrize("text, pos", [
    ("", "1:1"),
    ("   \n# only a comment\n", "3:1"),
    ("group G = Z\nindep system=nope tuple=T pool=ball(1)\n", "2:14"),
    ("group G = Z\nsystem s = full_shift(2, G)\ntuple T = [cyl{0: 0}]\n"
     "indep system=s tuple=T pool=ball(1\n", "5:1"),
    ("group G = Z\ngroup G = Z\nx1verify\n", "2:7"),
])
def test_error_positions(text, pos):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert str(exc.value).startswith(pos)


def test_undeclared_name_is_reported():
    with pytest.raises(UndeclaredNameError) as exc:
        parse_spec("group G = Z\ntuple T = [cyl{0: 0}]\nindep system=bern tuple=T pool=[0]\n")
    assert "bern" in str(exc.value)


def test_arity_errors():
    with pytest.raises(ArityError):
        parse_spec("group G = Zmod(2, 3)\nx1verify\n")
    with pytest.raises(ArityError):
        parse_spec("system x = x1(depth=3)\nx1verify\n")
    with pytest.raises(SpecError):
        parse_spec("group G = Z\nx1verify\nx1verify\n")
    with pytest.raises(SpecError):
        parse_spec("group G = Z\nindep system=G\n")
    with pytest.raises(SpecError):
        parse_spec("x1verify\ngroup G = Z\n")


# --- generated specs

ints = st.integers(-30, 30).map(str)
coords = st.one_of(ints, st.tuples(ints, st.sampled_from(["0", "1"])).map(lambda t: f"({t[0]}, {t[1]})"))


@st.composite
def regions(draw, depth=0):
    kind = draw(st.sampled_from(["cyl", "pts", "U", "a", "whole"] + (["prod", "pre"] if depth < 2 else [])))
    if kind == "cyl":
        entries = draw(st.lists(st.tuples(coords, st.integers(0, 3)), min_size=1, max_size=3))
        return "cyl{" + ", ".join(f"{c}: {v}" for c, v in entries) + "}"
    if kind == "pts":
        return "pts{" + ", ".join(draw(st.lists(st.integers(0, 5).map(str), min_size=1, max_size=3))) + "}"
    if kind == "U":
        return f"U({draw(st.integers(1, 5))}, {draw(st.one_of(ints, st.just('inf')))})"
    if kind == "a":
        return f"a({draw(st.one_of(ints, st.just('inf')))})"
    if kind == "prod":
        entries = draw(st.lists(st.tuples(coords, regions(depth + 1)), min_size=1, max_size=2))
        return "prod{" + ", ".join(f"{c}: {r}" for c, r in entries) + "}"
    if kind == "pre":
        return f"pre({draw(coords)}, {draw(regions(depth + 1))})"
    return "whole"


@st.composite
def specs(draw):
    lines = ["group G = " + draw(st.sampled_from(
        ["Z", "semidirect_Z_Z2", "product(Z, Z)", "Zmod(5)", "product(Z, Zmod(3))"]))]
    lines.append("system s = " + draw(st.sampled_from(
        ["full_shift(2, G)", "golden_mean", "trivial_finite(3, G)", "x1(levels=3, truncate=2)",
         "sft([[1, 0], [1, 1]])"])))
    n = draw(st.integers(1, 3))
    for i in range(n):
        lines.append(f"tuple T{i} = [" + ", ".join(draw(st.lists(regions(), min_size=1, max_size=3))) + "]")
    pool = draw(st.one_of(st.integers(0, 4).map(lambda r: f"ball({r})"),
                          st.lists(coords, min_size=1, max_size=4).map(lambda xs: "[" + ", ".join(xs) + "]")))
    verb = draw(st.sampled_from(["indep", "maxindep", "refute"]))
    extra = " n=3 anchor=e" if verb == "refute" else ""
    cap = draw(st.sampled_from(["", " cap=100"]))
    lines.append(f"{verb} system=s tuple=T{draw(st.integers(0, n - 1))} pool={pool}{extra}{cap}")
    sep = draw(st.sampled_from(["\n", "\n\n", "\n# note\n"]))
    return sep.join(lines) + "\n"


@settings(max_examples=50)
@given(text=specs())
def test_generated_round_trip(text):
    spec = parse_spec(text)
    printed = print_spec(spec)
    assert parse_spec(printed) == spec
    assert print_spec(parse_spec(printed)) == printed
