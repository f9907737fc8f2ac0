import json

import pytest

from simpcx.cli import main
from simpcx.complex import read_cplx
from simpcx.fixtures import DATA, load_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_of_fixture(capsys):
    code, out, _ = run(capsys, "homology", "S_8_20")
    assert code == 0
    assert "type: 3-sphere" in out
    assert "H~3: rank 1" in out


def test_homology_of_file(capsys, tmp_path):
    p = tmp_path / "circle.cplx"
    p.write_text("1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "homology", str(p))
    assert code == 0
    assert "H~0: rank 0" in out and "H~1: rank 1" in out


def test_missing_input_is_an_error(capsys):
    code, _, err = run(capsys, "homology", "no_such_thing")
    assert code == 2 and "error" in err


def test_collapse_writes_verifiable_certificate(capsys, tmp_path):
    out = tmp_path / "b.clps"
    code, _, _ = run(capsys, "collapse", "B_7_10", "-o", str(out))
    assert code == 0
    code, text, _ = run(capsys, "verify", "B_7_10", str(out))
    assert code == 0 and "verified" in text


def test_printed_certificate_reports_failure_step(capsys):
    code, text, _ = run(capsys, "verify", "B_16_91", str(DATA / "B_16_91_printed.clps"))
    assert code == 1
    assert "step 53" in text


def test_morse_vector(capsys):
    code, text, _ = run(capsys, "morse", "B_7_10", "--vector", "1,0,0,0", "--tries", "50")
    assert code == 0 and "found with seed" in text


def test_check_lc(capsys):
    code, text, _ = run(capsys, "check-lc", "S_13_56")
    assert code == 0 and text.startswith("verified: LC")


def test_check_ne_and_tree(capsys, tmp_path):
    tree = tmp_path / "ne.tree"
    code, text, _ = run(capsys, "check-ne", "B_7_10", "-o", str(tree))
    assert code == 0 and "non-evasive" in text
    code, text, _ = run(capsys, "verify-tree", "B_7_10", str(tree))
    assert code == 0 and "accepted" in text


def test_check_vd_false(capsys):
    code, _, _ = run(capsys, "check-vd", "B_7_10")
    assert code == 1


def test_check_shellable(capsys):
    code, text, _ = run(capsys, "check-shellable", "S_8_20")
    assert code == 0 and "shelling:" in text


def test_scan_evasive(capsys):
    code, text, _ = run(capsys, "scan-evasive", "B_12_38", "1")
    assert code == 0 and "1-subsets" in text
    assert run(capsys, "scan-evasive", "B_12_38")[0] == 2


def test_flip_reduce_and_replay(capsys, tmp_path):
    log = tmp_path / "r.flp"
    final = tmp_path / "r.cplx"
    code, text, _ = run(capsys, "flip-reduce", "S_8_20", "--seed", "0", "--budget", "3000", "-o", str(log), "--final", str(final))
    assert code == 0 and "->" in text
    assert read_cplx(final).f_vector()[0] < load_fixture("S_8_20").f_vector()[0]
    code, text, _ = run(capsys, "replay", "S_8_20", str(log))
    assert code == 0 and "replayed to" in text


def test_knot_homs(capsys):
    code, text, _ = run(capsys, "knot-homs", "S_13_56", "--cycle", "1 2 3")
    assert code == 0
    assert "homs to S3: 12" in text and "knotted" in text
    code, text, _ = run(capsys, "knot-homs", "B_12_38", "--edge", "2 3", "--groups", "S3")
    assert "homs to S3: 12" in text


def test_spanning_edges(capsys):
    code, text, _ = run(capsys, "spanning-edges", "B_12_38")
    assert code == 0 and "2 3: 2-6-7-8-3-2" in text


def test_list_and_export(capsys, tmp_path):
    code, text, _ = run(capsys, "list-fixtures")
    assert code == 0 and "S_44_284" in text
    out = tmp_path / "x.cplx"
    assert run(capsys, "export", "B_9_18", str(out))[0] == 0
    assert read_cplx(out).facets == load_fixture("B_9_18").facets


def test_verify_all_subset(capsys, tmp_path):
    js = tmp_path / "rows.json"
    code, text, _ = run(capsys, "verify-all", "--fast", "--criteria", "1,2", "--json", str(js))
    assert code == 0
    assert "PASS" in text
    assert json.loads(js.read_text())


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "simpcx", "list-fixtures"], capture_output=True, text=True)
    assert r.returncode == 0 and "B_7_10" in r.stdout


@pytest.mark.parametrize("argv", [[], ["nonsense"]])
def test_bad_usage_exits(argv):
    with pytest.raises(SystemExit):
        main(argv)
