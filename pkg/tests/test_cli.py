import os

from typer.testing import CliRunner

from app.cli.main import cli_app
from milnorcount.arrangement.arrangement import essentialize, parse_arrangement
from milnorcount.arrangement.serialized_data import SerializedArrangement
from milnorcount.counting.ffcount import count_milnor_fiber_bruteforce
from milnorcount.counting.field import PrimeField

DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data")

runner = CliRunner()


def data(filename: str) -> str:
    return os.path.join(DATA_DIR, filename)


def stdout_lines(result):
    # older click mixes stderr notices into stdout
    lines = result.stdout.strip().splitlines()
    return [line for line in lines if not line.startswith(("skipped ", "Skipping ", "error: "))]


def test_decompose():
    result = runner.invoke(cli_app, ["decompose", data("g2xg4.json")])
    assert result.exit_code == 0
    assert stdout_lines(result) == ["q=2 blocks=[0..3][4..9] d=(4,6) d0=2 trivial=false"]


def test_decompose_is_deterministic():
    first = runner.invoke(cli_app, ["decompose", "@a11"])
    second = runner.invoke(cli_app, ["decompose", "@a11"])
    assert first.stdout == second.stdout


def test_monodromy():
    result = runner.invoke(cli_app, ["monodromy", "@nearpencil:4"])
    assert result.exit_code == 0
    assert stdout_lines(result) == ["d0=1 trivial=true q=2 d=(3,1) euler=0 reducible=true"]


def test_charpoly():
    result = runner.invoke(cli_app, ["charpoly", "@g2"])
    assert result.exit_code == 0
    assert stdout_lines(result) == [
        "chi=-3 +6*t -4*t^2 +1*t^3",
        "projective=+3 -3*t +1*t^2",
        "euler=1",
        "flats=(1,4,6,1)",
        "poincare=+1 +4*t +6*t^2 +3*t^3",
        "betti=(1,3,3)",
    ]


def test_spectrum():
    result = runner.invoke(cli_app, ["spectrum", data("nearpencil4.yaml")])
    assert result.exit_code == 0
    assert stdout_lines(result) == [
        "point=(0,0,1) multiplicity=3",
        "1/4 0",
        "2/4 0",
        "3/4 0",
        "reducible=true trivial_monodromy=true spectrum_vanishes=true tate_h2=true "
        "square_divides_charpoly=true all_agree=true",
    ]


def test_spectrum_rows():
    result = runner.invoke(cli_app, ["spectrum", data("braid_lines.yaml")])
    assert result.exit_code == 0
    lines = stdout_lines(result)
    assert [line for line in lines if "/6 " in line] == ["1/6 0", "2/6 0", "3/6 1", "4/6 3", "5/6 2"]
    assert lines[-1].endswith("all_agree=true")


def test_hodge():
    result = runner.invoke(cli_app, ["hodge", "--uv", "1,1"])
    assert result.exit_code == 0
    lines = stdout_lines(result)
    assert lines[0].startswith("eigenvalue=0 dims=(1,9,36,83,120,110,60,15)")
    assert lines[1] == "eigenvalue=1/2 dims=(0,0,0,0,0,0,1,1) H^6:1(3,3) H^7:1(4,4)"
    assert "tate=true" in lines
    assert "HD=-15 +60*t -110*t^2 +119*t^3 -82*t^4 +36*t^5 -9*t^6 +1*t^7" in lines
    assert "zeta=true" in lines
    assert "minus_one dims=(0,0,0,0,0,0,1,1) total=2" in lines


def test_hodge_untyped():
    result = runner.invoke(cli_app, ["hodge", "@g2"])
    assert result.exit_code == 0
    assert "tate=false" in stdout_lines(result)
    assert "HD=undefined" in stdout_lines(result)


def test_count():
    result = runner.invoke(cli_app, ["count", "@a11", "--prime", "5"])
    assert result.exit_code == 0
    assert stdout_lines(result) == ["p=5 method=fast milnor=11160"]

    result = runner.invoke(
        cli_app, ["count", "@g2", "--prime", "5", "--method", "brute", "--target", "complement"]
    )
    assert stdout_lines(result) == ["p=5 method=brute complement=52"]


def test_count_range_skips_bad_primes():
    result = runner.invoke(
        cli_app, ["count", data("scaled_lines.yaml"), "--primes", "2..7", "--method", "brute"]
    )
    assert result.exit_code == 0
    assert [line.split()[0] for line in stdout_lines(result)] == ["p=5", "p=7"]


def test_count_expect_polynomial_count():
    result = runner.invoke(
        cli_app, ["count", "@a11", "--primes", "11", "--expect-polynomial-count"]
    )
    assert result.exit_code == 1
    assert "conclusion=falsified at=11" in stdout_lines(result)

    result = runner.invoke(
        cli_app, ["count", "@a11", "--primes", "5,13", "--expect-polynomial-count"]
    )
    assert result.exit_code == 0
    assert stdout_lines(result)[-1] == "conclusion=consistent-so-far"


def test_katz():
    result = runner.invoke(cli_app, ["katz", "@a11", "--primes", "5,97"])
    assert result.exit_code == 0
    lines = stdout_lines(result)
    assert lines[0] == "candidate=-15 +60*t -110*t^2 +119*t^3 -82*t^4 +36*t^5 -9*t^6 +1*t^7"
    assert lines[1] == "p=5 count=11160 predicted=11160 match=true count%8=0 predicted%8=0"
    assert lines[2] == (
        "p=97 count=73603528860864 predicted=73603528860864 match=true count%8=0 predicted%8=0"
    )
    assert lines[3] == "conclusion=consistent-so-far"


def test_katz_falsified():
    result = runner.invoke(cli_app, ["katz", "@a11", "--primes", "5,11"])
    assert result.exit_code == 0
    assert stdout_lines(result)[-1] == "conclusion=falsified at=11"

    result = runner.invoke(
        cli_app, ["katz", "@a11", "--primes", "11", "--expect-polynomial-count"]
    )
    assert result.exit_code == 1
    assert "predicted%8=0" in stdout_lines(result)[1]


def test_reproduce_rk2():
    result = runner.invoke(cli_app, ["reproduce", "rk2", "--primes", "5,13,89"])
    assert result.exit_code == 0
    lines = stdout_lines(result)
    assert len(lines) == 4
    suffix = "match=true count%8=0 predicted%8=0 published=agree"
    assert all(line.endswith(suffix) for line in lines[:2])
    assert lines[2] == (
        "p=89 count=39954467578608 predicted=39954467578608 match=true count%8=0 "
        "predicted%8=0 published=differ"
    )
    assert lines[3] == "conclusion=consistent-so-far"



def test_reproduce_mod8():
    result = runner.invoke(cli_app, ["reproduce", "mod8", "--primes", "11,23"])
    assert result.exit_code == 0
    assert len(stdout_lines(result)) == 2
    assert all("count_nonzero_mod8=true" in line for line in stdout_lines(result))


def test_budget_exceeded():
    result = runner.invoke(
        cli_app, ["count", "@a11", "--prime", "5", "--method", "brute", "--budget", "1000"]
    )
    assert result.exit_code == 3


def test_config_file():
    result = runner.invoke(
        cli_app,
        ["count", "@a11", "--prime", "5", "--method", "brute", "--config", data("counting_conf.yaml")],
    )
    assert result.exit_code == 3


def test_errors():
    assert runner.invoke(cli_app, ["decompose", data("ragged.yaml")]).exit_code == 3
    assert runner.invoke(cli_app, ["decompose", data("non_essential.yaml")]).exit_code == 3
    assert runner.invoke(cli_app, ["spectrum", "@g4"]).exit_code == 3
    assert runner.invoke(cli_app, ["count", "@g2", "--prime", "4"]).exit_code == 3
    assert runner.invoke(cli_app, ["count", "@g2"]).exit_code == 2
    assert runner.invoke(cli_app, ["decompose", "@g2", "--unknown"]).exit_code == 2
    assert runner.invoke(cli_app, ["count", "@g2", "--prime", "5", "--method", "magic"]).exit_code == 2


def test_reproduce_mod8_details():
    result = runner.invoke(cli_app, ["reproduce", "mod8", "--primes", "11", "--details"])
    assert result.exit_code == 0
    lines = stdout_lines(result)
    assert len(lines) == 4
    assert lines[1].startswith("p=11 n1p=")
    assert lines[2].startswith("factor=0 p=11 d=4 cosets=2 backend=fast")
    assert lines[3].startswith("factor=1 p=11 d=6 cosets=2 backend=fast")


def test_brute_count_of_non_essential_arrangement():
    arrangement = parse_arrangement(SerializedArrangement.from_file(data("non_essential.yaml")))
    reduced = count_milnor_fiber_bruteforce(essentialize(arrangement), PrimeField(5)).value
    result = runner.invoke(
        cli_app, ["count", data("non_essential.yaml"), "--prime", "5", "--method", "brute"]
    )
    assert result.exit_code == 0
    assert stdout_lines(result) == [f"p=5 method=brute milnor={5 * reduced}"]
    result = runner.invoke(cli_app, ["count", data("non_essential.yaml"), "--prime", "5"])
    assert result.exit_code == 3
