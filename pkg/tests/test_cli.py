import csv
import io
import json
import math

import pytest

from hallpost.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_energy_rows(capsys):
    code, out, _ = run(capsys, "energy", "calogero1d", "--n", "5", "--omega", "1", "--g", "0")
    assert code == 0
    assert float(rows(out)[0]["energy"]) == pytest.approx(18.973666, rel=1e-7)

    code, out, _ = run(capsys, "energy", "hypercoulomb", "--n", "5", "--alpha", "1", "--g", "0")
    assert float(rows(out)[0]["energy"]) == pytest.approx(-3.780718e-4, rel=1e-6)

    code, out, _ = run(capsys, "energy", "calogerod", "--n", "3", "--dim", "2", "--omega", "1", "--g", "0")
    row = rows(out)[0]
    assert float(row["energy"]) == pytest.approx(2.449490, rel=1e-6)
    assert float(row["G"]) == 0.0


def test_energy_domain_error(capsys):
    code, _, err = run(capsys, "energy", "calogero1d", "--n", "5", "--g", "-1")
    assert code == 2 and "-1/4" in err
    code, _, err = run(capsys, "energy", "calogerod", "--n", "5", "--g", "1")
    assert code == 2 and "--dim" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["energy"])
    assert exc.value.code == 2


def test_csv_schema(capsys):
    _, out, _ = run(capsys, "ratio", "calogero1d", "--n", "5", "--g", "2")
    lines = out.splitlines()
    assert lines[0] == "# command: hallpost ratio calogero1d --n 5 --g 2"
    assert lines[1].startswith("# version: hallpost ")
    assert lines[2] == "g,beta,betaprime,energy,bound,ratio,limit_at_infinity"
    ratio = rows(out)[0]["ratio"]
    assert ratio == format(1.1418784396519657, ".15g")


def test_ratio_sweep(capsys):
    code, out, _ = run(capsys, "ratio", "calogero1d", "--n", "5", "--g-min", "0", "--g-max", "20", "--points", "81")
    data = rows(out)
    assert code == 0 and len(data) == 81
    assert float(data[0]["ratio"]) == pytest.approx(1.2, abs=1e-12)
    assert all(float(r["ratio"]) >= 1.118034 for r in data)

    _, out, _ = run(capsys, "ratio", "hypercoulomb", "--n", "5", "--g-min", "0", "--g-max", "20")
    data = rows(out)
    assert float(data[0]["ratio"]) == pytest.approx(0.578923, abs=1e-6)
    assert all(float(r["ratio"]) <= 0.75 for r in data)

    _, out, _ = run(capsys, "ratio", "calogerod", "--n", "5", "--dim", "3", "--g-min", "0", "--g-max", "20")
    assert float(rows(out)[0]["ratio"]) == pytest.approx(1.0, abs=1e-12)


def test_ratio_log_sweep(capsys):
    code, out, _ = run(capsys, "ratio", "calogero1d", "--n", "4", "--g-min", "0.1", "--g-max", "1000", "--points", "5", "--log")
    assert code == 0
    assert [float(r["g"]) for r in rows(out)] == pytest.approx([0.1, 1, 10, 100, 1000])
    code, _, err = run(capsys, "ratio", "calogero1d", "--n", "4", "--g-min", "0", "--g-max", "1", "--log")
    assert code == 2


def test_ratio_domain_error_names_g(capsys):
    code, _, err = run(capsys, "ratio", "calogero1d", "--n", "5", "--g-min", "-0.25", "--g-max", "1", "--points", "3")
    assert code == 2 and "g = -0.25" in err


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "calogero1d")
    assert code == 0 and "# violations=0 worst_margin=" in out
    assert len(rows(out)) == 8 * 25

    code, out, _ = run(capsys, "audit", "calogerod")
    assert code == 0 and "# violations=0" in out
    assert all(float(r["three_body_margin"]) >= 0 for r in rows(out))

    code, _, err = run(capsys, "audit", "hypercoulomb", "--n-min", "3", "--n-max", "6")
    assert code == 2 and "N >= 4" in err


def test_audit_records_domain_errors(capsys):
    code, out, _ = run(capsys, "audit", "calogero1d", "--n-min", "3", "--n-max", "3", "--g", "-0.25")
    assert code == 0
    assert rows(out)[0]["error"] and "# domain_errors=1" in out
    assert "-1/4 <= g < 0" in out


def test_oracle_commands(capsys):
    code, out, _ = run(capsys, "oracle", "calogero1d", "--n", "4", "--g", "2", "--samples", "100", "--seed", "7")
    assert code == 0 and float(rows(out)[0]["rel_error"]) < 1e-8

    code, out, _ = run(capsys, "oracle", "twobody", "--kind", "oscillator", "--omega", "1", "--g", "2")
    assert code == 0 and float(rows(out)[0]["E0"]) == pytest.approx(2.5, abs=1e-6)

    code, out, _ = run(capsys, "oracle", "calogero1d", "--n", "2", "--g", "0", "--printed-gauss")
    assert code == 1 and float(rows(out)[0]["rel_stddev"]) > 1e-2

    code, out, _ = run(capsys, "oracle", "twobody", "--kind", "coulomb", "--lambda", "1", "--g", "0")
    row = rows(out)[0]
    assert code == 0 and float(row["closed_form_n2"]) == pytest.approx(-0.125)


def test_oracle_nonconvergence_fails(capsys):
    code, out, _ = run(capsys, "oracle", "twobody", "--kind", "oscillator", "--g", "-0.2", "--grid-points", "256")
    assert code == 1 and "refinement" in out


def test_figures(capsys):
    code, out, _ = run(capsys, "figure", "fig1")
    data = [float(r["ratio"]) for r in rows(out)]
    assert code == 0 and len(data) == 201
    assert all(b < a for a, b in zip(data, data[1:]))
    limits = {r["limit_at_infinity"] for r in rows(out)}
    assert limits == {format(math.sqrt(5 / 4), ".15g")}

    code, out, _ = run(capsys, "figure", "fig2")
    data = [float(r["ratio"]) for r in rows(out)]
    assert all(b > a for a, b in zip(data, data[1:]))
    assert {r["limit_at_infinity"] for r in rows(out)} == {"0.75"}


def test_json_output(capsys):
    code, out, _ = run(capsys, "ratio", "hypercoulomb", "--n", "5", "--g", "0", "--json")
    doc = json.loads(out)
    assert doc["command"].startswith("hallpost ratio")
    assert doc["parameters"]["n"] == 5
    assert list(doc["outputs"][0]) == ["g", "beta", "betaprime", "energy", "bound", "ratio", "limit_at_infinity"]
    assert doc["outputs"][0]["ratio"] == pytest.approx(0.578922495274102)


def test_determinism_and_out(capsys, tmp_path):
    argv = ["oracle", "calogero1d", "--n", "3", "--g", "0.5", "--samples", "20", "--seed", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    target = tmp_path / "o.csv"
    main(argv + ["--out", str(target)])
    assert capsys.readouterr().out == ""
    assert target.read_text().splitlines()[2:] == first.splitlines()[2:]


def test_timestamp_opt_in(capsys):
    _, out, _ = run(capsys, "energy", "calogero1d", "--n", "3", "--g", "0", "--timestamp")
    assert "# timestamp: " in out
