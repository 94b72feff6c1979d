import json
import random

import pytest

from q2algebra.algebra import GEN_S2, GEN_U, ONE, equals
from q2algebra.cli import main
from q2algebra.parser import ParseError, parse_element, print_element

from conftest import rand_element


def test_parse_examples():
    assert equals(parse_element("S2 U"), GEN_U**2 * GEN_S2)
    assert equals(parse_element("U^-1 S1"), GEN_S2)
    with pytest.raises(ParseError) as err:
        parse_element("S2 +")
    assert err.value.position == 5


def test_parse_scalars_and_precedence():
    assert equals(parse_element("1"), ONE)
    assert parse_element("-1/2 U + 1/2 U").is_zero()
    assert equals(parse_element("i i"), -ONE)
    assert equals(parse_element("zeta(4)"), parse_element("i"))
    assert equals(parse_element("zeta(2^3)^2"), parse_element("i"))
    assert equals(parse_element("U^2 S2"), parse_element("U U S2"))
    assert equals(parse_element("(S2 S2* + U S2 S2* U*)^3"), ONE)
    assert equals(parse_element("S2*^2 S2^2"), ONE)
    assert equals(parse_element("U*^2"), parse_element("U^-2"))


def test_parse_errors():
    for bad in ("", "S2 ^", "zeta(3)", "zeta()", "1/0", "Q", "(S2", "S2^-1", "2/)", "^2", "zeta(8", "S12"):
        with pytest.raises(ParseError):
            parse_element(bad)


def test_print_parse_round_trip(rng):
    for _ in range(200):
        x = rand_element(rng)
        text = print_element(x)
        y = parse_element(text)
        assert y.terms == x.terms, text


def test_print_canonical_order_deterministic(rng):
    x = rand_element(rng, nterms=4)
    assert print_element(x) == print_element(x + GEN_S2 - GEN_S2)


def test_fuzz_parser_never_crashes():
    rng = random.Random(99)
    alphabet = "US12*^+-()/ zetai().034"
    for _ in range(10_000):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 24)))
        try:
            parse_element(text)
        except ParseError:
            pass
        except (OverflowError, MemoryError):
            pass  # astronomically large exponents are legitimate engine limits


def test_cli_spec_examples(capsys):
    assert main(["eq", "S1", "U S2"]) == 0
    assert capsys.readouterr().out.strip() == "EQUAL"

    assert main(["expect", "CU", "S2^3 S2*^3"]) == 0
    assert capsys.readouterr().out.strip() == "1/8"

    assert main(["apply", "flipflop", "S1"]) == 0
    assert capsys.readouterr().out.strip() == "S2"


def test_cli_eq_different_and_exit_codes(capsys):
    assert main(["eq", "S2", "S1"]) == 1
    assert capsys.readouterr().out.strip() == "DIFFERENT"
    assert main(["eq", "S2", "S2 +"]) == 2
    assert "parse error" in capsys.readouterr().err
    assert main(["normalize", "S2 S2*", "--depth", "0"]) == 3  # DepthTooSmall
    err = capsys.readouterr().err
    assert "DepthTooSmall" in err


def test_cli_normalize_and_member(capsys):
    assert main(["normalize", "U", "--depth", "2"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "S2^2 S2*^2 U + U S2^2 S2*^2 + U^2 S2^2 S2*^2 U* + U^3 S2^2 S2*^2 U*^2"
    assert main(["member", "O2", "U"]) == 1
    assert capsys.readouterr().out.strip() == "NOT-MEMBER"
    assert main(["member", "F2", "S1 S2*"]) == 0
    assert capsys.readouterr().out.strip() == "MEMBER"


def test_cli_apply_labels(capsys):
    assert main(["apply", "gauge:zeta(8)^3", "S2"]) == 0
    assert capsys.readouterr().out.strip() == "zeta(8)^3 S2"
    assert main(["apply", "chi:5", "U"]) == 0
    assert capsys.readouterr().out.strip() == "U^5"
    assert main(["apply", "beta:i,1", "S2"]) == 0
    assert capsys.readouterr().out.strip() == "i U S2"
    assert main(["apply", "shift", "U"]) == 0
    assert capsys.readouterr().out.strip() == "U^2"
    assert main(["apply", "adU", "S1"]) == 0
    assert capsys.readouterr().out.strip() == "S2"


def test_cli_window_and_eval(capsys):
    assert main(["window", "S2", "--window=-2:2"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "row,col,re,im"
    assert "-2,-1,1.0,0.0" in out
    assert main(["window", "P", "--window=-1:1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [0, 0, 1.0, 0.0] in data["entries"]
    assert main(["eval", "S2", "--basis", "3"]) == 0
    assert capsys.readouterr().out.strip() == "e_6: 1"


def test_cli_classify_and_uz(capsys):
    assert main(["classify-bogoljubov", "zeta(8)", "0", "0", "zeta(8)"]) == 0
    assert capsys.readouterr().out.strip() == "Gauge(zeta(8))"
    assert main(["classify-bogoljubov", "--", "0.7071067811865476,0", "0.7071067811865476,0",
                 "0.7071067811865476,0", "-0.7071067811865476,0"]) == 1
    assert capsys.readouterr().out.strip() == "NotExtensible"
    assert main(["uz", "1"]) == 0
    assert capsys.readouterr().out.strip() == "S2 S2* - U S2 S2* U*"


def test_cli_window_uz_phase(capsys):
    assert main(["window", "Uz:pi/2", "--window=0:3"]) == 0
    out = capsys.readouterr().out
    assert "1,1,6.123233995736766e-17,1.0" in out  # e^(i pi/2) on the diagonal


def test_cli_cascade_and_solve_feq(capsys):
    assert main(["cascade", "step:pi/4", "--level", "10", "--check", "gauge"]) == 1
    out = capsys.readouterr().out
    assert "OBSTRUCTED" in out
    assert main(["cascade", "char:1", "--level", "8"]) == 0
    assert "solved cascade at level 8" in capsys.readouterr().out
    assert main(["cascade", "step:pi/4", "--level", "10", "--check", "gauge",
                 "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert abs(data["oscillation_at_one"] - 2.0) < 1e-6
    assert main(["cascade", "char:2", "--level", "8", "--check", "flipflop"]) == 0
    capsys.readouterr()
    assert main(["solve-feq", "U^3"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["solve-feq", "--", "-U"]) == 3
    capsys.readouterr()
    assert main(["solve-feq", "U^-2", "--power", "5"]) == 0
    assert capsys.readouterr().out.strip() == "-2"


def test_cli_expect_diag_and_json(capsys):
    assert main(["expect", "diag", "S2 S2*", "--window=-4:4"]) == 0
    assert capsys.readouterr().out.strip() == "-4: 1, -2: 1, 0: 1, 2: 1, 4: 1"
    assert main(["eq", "S1", "U S2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"equal": True}
    assert main(["normalize", "S2", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["terms"][0]["a"] == 1


def test_cli_fuzz_never_crashes(capsys):
    rng = random.Random(123)
    alphabet = "US12*^+-()/zetai .,:049"
    for _ in range(500):
        expr = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 16)))
        code = main(["eq", "--", expr, "S2"])
        assert code in (0, 1, 2, 3)
        capsys.readouterr()
