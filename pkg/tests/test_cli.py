import json
import math
from fractions import Fraction

import pytest

from guekit.cli import (
    cmd_density,
    cmd_harer_zagier,
    cmd_moments,
    cmd_rosettes,
    cmd_sample,
    cmd_wilson,
    main,
)
from guekit.records import OutputRecord, decode_cell, encode_cell


# ------------------------------------------------------------------- records

def test_cell_encoding():
    assert encode_cell(Fraction(3, 4)) == "3/4"
    assert encode_cell(Fraction(5, 1)) == "5"
    assert encode_cell(1.0) == "1.0"
    assert encode_cell(7) == "7"
    assert decode_cell("3/4") == Fraction(3, 4)
    assert decode_cell("5") == 5
    assert decode_cell("1.0") == 1.0
    assert isinstance(decode_cell("1.0"), float)
    assert decode_cell("sum") == "sum"


def test_csv_round_trip():
    rec = OutputRecord(
        "demo",
        {"N": 3, "tol": 1e-9, "coefficients": [Fraction(1, 54)]},
        ["a", "b", "c"],
        [[1, Fraction(9, 4), 0.1 + 0.2], ["sum", Fraction(7), -3.5e-17]],
    )
    back = OutputRecord.from_csv(rec.to_csv())
    assert back.command == rec.command
    assert back.parameters == rec.parameters
    assert back.columns == rec.columns
    assert back.rows == rec.rows
    # floats survive bit-exactly through the 17-digit rendering
    assert back.rows[0][2] == 0.1 + 0.2


def test_json_round_trip():
    rec = OutputRecord("demo", {"seed": 7}, ["x", "y"],
                       [[0.5, Fraction(1, 3)], [2, Fraction(4)]])
    back = OutputRecord.from_json(rec.to_json())
    assert back == OutputRecord("demo", {"seed": 7}, ["x", "y"],
                                [[0.5, Fraction(1, 3)], [2, 4]])
    assert back.rows[1][1] == Fraction(4)


def test_record_rejects_ragged_rows():
    with pytest.raises(ValueError):
        OutputRecord("demo", {}, ["a"], [[1, 2]])


def test_round_trip_on_random_tables():
    import random

    rng = random.Random(404)

    def random_cell():
        kind = rng.randrange(4)
        if kind == 0:
            return rng.randrange(-10**12, 10**12)
        if kind == 1:
            return rng.uniform(-1e6, 1e6) * 10.0 ** rng.randrange(-20, 20)
        if kind == 2:
            return Fraction(rng.randrange(-10**9, 10**9), rng.randrange(1, 10**6))
        return rng.choice(["sum", "label-x", "double_factorial"])

    for _ in range(25):
        cols = [f"c{i}" for i in range(rng.randrange(1, 5))]
        rows = [[random_cell() for _ in cols] for _ in range(rng.randrange(0, 6))]
        rec = OutputRecord("demo", {"seed": rng.randrange(1000)}, cols, rows)
        for back in (OutputRecord.from_csv(rec.to_csv()),
                     OutputRecord.from_json(rec.to_json())):
            assert back.columns == cols
            assert len(back.rows) == len(rows)
            for got, want in zip(back.rows, rows):
                for g, w in zip(got, want):
                    assert g == w  # floats bit-equal, rationals numerically equal


# ------------------------------------------------------------------ commands

def test_cmd_wilson_rows():
    rec = cmd_wilson(1, -2.0, 2.0, 5)
    ts = [row[0] for row in rec.rows]
    assert ts == [-2.0, -1.0, 0.0, 1.0, 2.0]
    values = {row[0]: row[1] for row in rec.rows}
    assert values[0.0] == 1.0
    assert values[1.0] == pytest.approx(math.exp(-0.5), rel=1e-14)


def test_cmd_wilson_root_and_coefficients():
    rec = cmd_wilson(2, 0.0, 2.0, 3)
    assert abs(rec.rows[-1][1]) <= 1e-15  # root of 1 - t^2/4 at t = 2
    rec3 = cmd_wilson(3, 0.0, 1.0, 2)
    assert rec3.parameters["coefficients"] == [Fraction(1), Fraction(1, 3), Fraction(1, 54)]
    assert "1/54" in rec3.to_csv()


def test_cmd_density_rows():
    rec = cmd_density(1, -3.0, 3.0, 7)
    mid = dict((row[0], (row[1], row[2])) for row in rec.rows)
    rho, wig = mid[0.0]
    assert rho == pytest.approx(0.3989422804014327, rel=1e-12)
    assert wig == pytest.approx(0.3183098861837907, rel=1e-12)
    for lam in [1.0, 2.0, 3.0]:
        assert mid[lam][0] == pytest.approx(mid[-lam][0], abs=1e-12)
    # Riemann sum over a wide grid lands near 1
    wide = cmd_density(2, -8.0, 8.0, 801)
    step = 16.0 / 800
    assert sum(row[1] for row in wide.rows) * step == pytest.approx(1.0, abs=1e-2)


def test_cmd_moments_rows():
    rec = cmd_moments(1, 4)
    from guekit.exact import double_factorial

    for row in rec.rows:
        l, moment, moment_float, cat = row
        assert moment == double_factorial(2 * l - 1)
        assert moment_float == float(moment)
    rec2 = cmd_moments(2, 2)
    assert rec2.rows[2][1] == Fraction(9, 4)
    assert rec2.rows[0][1] == 1


def test_cmd_rosettes_rows_and_footer():
    rec = cmd_rosettes(2)
    assert rec.rows[0] == [0, 2]
    assert rec.rows[1] == [1, 1]
    assert rec.rows[-2] == ["sum", 3]
    assert rec.rows[-1] == ["double_factorial", 3]
    rec3 = cmd_rosettes(3)
    assert rec3.rows[0][1] == 5 and rec3.rows[1][1] == 10
    # formula route keeps working beyond the enumeration budget
    rec12 = cmd_rosettes(12)
    assert rec12.rows[-2][1] == rec12.rows[-1][1]
    single = cmd_rosettes(4, genus=1)
    assert single.rows == [[1, 70]]


def test_cmd_harer_zagier_rows():
    rec = cmd_harer_zagier(1, 5)
    assert all(row[1] == 1 and row[2] == 1 for row in rec.rows)
    rec2 = cmd_harer_zagier(2, 3)
    assert rec2.rows[1][1] == Fraction(3, 4)
    assert all(row[1] == row[2] for row in rec2.rows)


def test_cmd_sample_rows():
    rec = cmd_sample(4, 500, 11, [0.0, 1.0])
    t0 = rec.rows[0]
    assert t0[1] == 1.0 and t0[4] == 0.0
    t1 = rec.rows[1]
    assert abs(t1[4]) <= 4.0  # z-score against the exact value


def test_cmd_sample_default_seed_claim():
    # published claim: with the default seed at N=8 and 1e4 samples, every
    # grid point sits within four standard errors of the exact value
    from guekit.verify import DEFAULT_SEED

    rec = cmd_sample(8, 10000, DEFAULT_SEED, [0.5 * k for k in range(1, 9)])
    assert all(abs(row[4]) <= 4.0 for row in rec.rows)


# ---------------------------------------------------------------- main + exit

def run_main(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_main_wilson_csv(capsys):
    code, out = run_main(capsys, ["wilson", "--N", "1", "--t-min", "0",
                                  "--t-max", "2", "--steps", "3"])
    assert code == 0
    rec = OutputRecord.from_csv(out)
    assert rec.command == "wilson"
    assert rec.rows[0] == [0.0, 1.0]


def test_main_json_format(capsys):
    code, out = run_main(capsys, ["moments", "--N", "2", "--l-max", "2",
                                  "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "moments"
    assert doc["rows"][2][1] == "9/4"


def test_main_out_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, _ = run_main(capsys, ["rosettes", "--l", "2", "--out", str(target)])
    assert code == 0
    rec = OutputRecord.from_csv(target.read_text())
    assert rec.rows[0] == [0, 2]


def test_main_rejects_invalid_n(capsys):
    code = main(["wilson", "--N", "0"])
    assert code == 2


def test_main_sample_deterministic(capsys):
    argv = ["sample", "--N", "2", "--samples", "300", "--seed", "5",
            "--t", "0.5", "--t", "1.5"]
    code1, out1 = run_main(capsys, argv)
    code2, out2 = run_main(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_main_verify_quick_suites(capsys):
    code, out = run_main(capsys, ["verify", "--suite", "wick", "--l-max", "4"])
    assert code == 0 and "PASS wick" in out
    code, out = run_main(capsys, ["verify", "--suite", "hz", "--l-max", "4"])
    assert code == 0 and "PASS hz" in out


def test_main_verify_budget_cannot_be_raised(capsys):
    code = main(["verify", "--suite", "wick", "--l-max", "9"])
    assert code == 2


def test_main_verify_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_main_verify_reports_failures(capsys, monkeypatch):
    def broken(name, **kwargs):
        return [{"module": "demo", "operation": "op", "inputs": {},
                 "expected": "0", "actual": "1"}]

    monkeypatch.setattr("guekit.cli.run_suite", broken)
    code, out = run_main(capsys, ["verify", "--suite", "wick"])
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "FAIL"
    assert doc["failures"][0]["module"] == "demo"
