from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from dtmotive.cli import main
from dtmotive.motive import MotiveRatio
from dtmotive.pipeline import table_from_catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_lists_quantum_bs_total(capsys):
    code, out, _ = run(capsys, "catalog", "--case", "quantum")
    assert code == 0
    assert "L^9 + L^8 + L^7 - L^6 - 4*L^5 + 2*L^4" in out
    assert "from:" in out


def test_catalog_lists_weyl_bs_at_zero(capsys):
    code, out, _ = run(capsys, "catalog", "--case", "weyl", "--format", "json")
    assert code == 0
    entries = {e["name"]: e for e in json.loads(out)["weyl"]["entries"]}
    assert entries["BS2(0)"]["value"] == "L^9 + L^8 + 2*L^7 - L^6"


def test_unknown_case_is_a_usage_error(capsys):
    code, _, err = run(capsys, "catalog", "--case", "nonsense")
    assert code == 2 and "nonsense" in err


def test_unknown_flag_is_a_usage_error(capsys):
    assert run(capsys, "catalog", "--frobnicate")[0] == 2


def test_verify_quantum(capsys):
    code, out, _ = run(capsys, "verify", "--case", "quantum", "--primes", "2,5,7")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_weyl_plain(capsys):
    code, out, _ = run(capsys, "verify", "--case", "weyl", "--primes", "5,7,13", "--format", "plain")
    assert code == 0
    assert "fail" not in out.split()


def test_verify_rejects_three_for_weyl(capsys):
    code, _, err = run(capsys, "verify", "--case", "weyl", "--primes", "3")
    assert code == 2 and "q=3" in err


def test_verify_rejects_composite_primes(capsys):
    assert run(capsys, "verify", "--case", "quantum", "--primes", "4")[0] == 2


def test_count_emits_one_csv_row(capsys):
    code, out, _ = run(capsys, "count", "--potential", "XYZ+XZY", "--n", "2", "--lambda", "1", "--q", "5")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "q,lambda_class,count,elapsed_ms"
    q, cls, count, _ = row.split(",")
    assert (q, cls, int(count)) == ("5", "unit", 5 ** 11 - 5 ** 8 - 3 * 5 ** 7 + 2 * 5 ** 6 + 2 * 5 ** 5 - 5 ** 4)


def test_count_cell_over_residue_classes(capsys):
    code, out, _ = run(capsys, "count", "--case", "weyl", "--cell", "3", "--q", "7", "--format", "json")
    assert code == 0
    rows = json.loads(out)["counts"]
    assert [r["lambda_class"] for r in rows] == ["zero", "cubic-class-0", "cubic-class-1", "cubic-class-2"]


def test_count_needs_a_potential(capsys):
    assert run(capsys, "count", "--q", "5")[0] == 2
    assert run(capsys, "count", "--potential", "XYZ +", "--q", "5")[0] == 2


def test_json_output_is_deterministic(capsys):
    args = ("count", "--case", "quantum", "--cell", "1", "--primes", "5,7", "--format", "json")
    first = run(capsys, *args)[1]
    second = run(capsys, *args, "--jobs", "2")[1]
    assert first == second
    v1 = run(capsys, "verify", "--case", "quantum", "--primes", "5")[1]
    v2 = run(capsys, "verify", "--case", "quantum", "--primes", "5", "--jobs", "2")[1]
    assert v1 == v2


def test_exp_prints_the_second_coefficient(capsys):
    code, out, _ = run(capsys, "exp", "--bracket", "(2L-1)/(L-1)*t/(1-t)+(L-1)*t^2/(1-t^2)", "--order", "2",
                       "--format", "json")
    assert code == 0
    result = json.loads(out)["result"]
    c2 = MotiveRatio.from_json(result["coeffs"][2])
    assert c2 == MotiveRatio.parse("(L^4 + 3L^3 - 2L^2 - 2L + 1)/((L^2-1)(L-1))")


def test_exp_rejects_a_constant_term(capsys):
    assert run(capsys, "exp", "--bracket", "1 + t")[0] == 2


def test_induct_from_a_table(capsys, tmp_path):
    path = tmp_path / "table.json"
    path.write_text(json.dumps(table_from_catalog("quantum", with_fibers=False).to_json()))
    code, out, _ = run(capsys, "induct", "--table", str(path), "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["delta"] == "L^9 + 3*L^8 - 2*L^7 - 2*L^6 + L^5"


def test_induct_with_a_bad_table(capsys, tmp_path):
    path = tmp_path / "table.json"
    path.write_text("{not json")
    assert run(capsys, "induct", "--table", str(path))[0] == 2


def test_output_file(capsys, tmp_path):
    out = tmp_path / "cat.json"
    assert run(capsys, "catalog", "--format", "json", "--out", str(out))[0] == 0
    assert set(json.loads(out.read_text())) == {"quantum", "weyl"}


@pytest.mark.skipif(shutil.which("dtmotive") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["dtmotive", "catalog", "--case", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dtmotive", "exp", "--bracket", "t", "--order", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "t^3: 1"
