import contextlib
import io
import json
import pathlib
import sys

from frobdet.cli import run
from frobdet.semigroups import build_family, emit_sgp

from corpus import zmult

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"
WENGER = str(DATA / "wenger.sgp")
ELEVEN = str(DATA / "eleven.sgp")


def run_cli(argv, stdin=None):
    """Run the CLI in process, capturing (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    saved = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = run(argv)
    finally:
        sys.stdin = saved
    return code, out.getvalue(), err.getvalue()


def test_smith():
    code, out, _ = run_cli(["smith", "6"])
    assert code == 0
    assert "32" in out
    code, out, _ = run_cli(["smith", "8", "--json"])
    data = json.loads(out)
    assert data["determinant"] == 768
    assert data["phi_factors"] == [1, 1, 2, 2, 4, 2, 6, 4]


def test_gen_validate_round_trip():
    code, sgp, _ = run_cli(["gen", "gcd", "4"])
    assert code == 0
    code, echoed, _ = run_cli(["validate", "-"], stdin=sgp)
    assert code == 0
    assert echoed == sgp


def test_gen_pipe_factor():
    _, sgp, _ = run_cli(["gen", "gcd", "4"])
    code, out, _ = run_cli(["factor", "-", "--json"], stdin=sgp)
    assert code == 0
    data = json.loads(out)
    assert data["provenance"] == "wilf-lindstrom"
    assert data["status"] == "factored"
    assert len(data["factors"]) == 4
    assert data["verification"]["mode"] == "exact"
    assert data["verification"]["equal"] is True


def test_factor_dispatch_provenances():
    cases = [
        (emit_sgp(build_family("chain_semilattice", 3)), "wilf-lindstrom"),
        (emit_sgp(build_family("zmod_add", 4)), "dedekind"),
        (emit_sgp(build_family("adjoin_zero",
                               build_family("zmod_add", 3))), "clifford-mobius"),
        (emit_sgp(build_family("cyclic_nilpotent", 3)), "nilpotent-annihilator"),
        (emit_sgp(zmult(8)), "commutative-pipeline"),
    ]
    for sgp, provenance in cases:
        code, out, err = run_cli(["factor", "-", "--json"], stdin=sgp)
        assert code == 0, err
        assert json.loads(out)["provenance"] == provenance


def test_factor_general_inverse_route():
    sgp = emit_sgp(build_family("rook", 2))
    code, out, _ = run_cli(["factor", "-", "--json"], stdin=sgp)
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "frobenius"
    assert data["provenance"] == "groupoid-mobius"
    assert data["determinant"] != "0"
    assert data["verification"]["mode"] == "exact"


def test_factor_fallback_reports_vanishing():
    sgp = emit_sgp(build_family("left_zero", 2))
    code, out, _ = run_cli(["factor", "-", "--json"], stdin=sgp)
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "not_frobenius"
    assert data["provenance"] is None
    assert any("no factorization theorem" in n for n in data["notes"])


def test_wenger_contracted():
    code, out, _ = run_cli(["factor", WENGER, "--contracted",
                            "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["constant"] == "-1"
    forms = [(f["form"], f["multiplicity"]) for f in data["factors"]]
    assert forms == [({"x6": "1", "x7": "1"}, 4),
                     ({"x6": "1", "x7": "-1"}, 4)]


def test_eleven_contracted_vanishes():
    code, out, _ = run_cli(["factor", ELEVEN, "--contracted",
                            "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "zero"
    assert any("det A = 0" in n for n in data["notes"])


def test_det_verify_round_trip(tmp_path):
    _, sgp, _ = run_cli(["gen", "gcd", "4"])
    _, det_out, _ = run_cli(["det", "-"], stdin=sgp)
    _, fact_out, _ = run_cli(["factor", "-", "--json"], stdin=sgp)
    (tmp_path / "t.det").write_text(det_out)
    (tmp_path / "t.json").write_text(fact_out)
    code, out, _ = run_cli(["verify", str(tmp_path / "t.det"),
                            str(tmp_path / "t.json")])
    assert code == 0
    assert "verified" in out
    code, out, _ = run_cli(["verify", str(tmp_path / "t.det"),
                            str(tmp_path / "t.json"), "--randomized"])
    assert code == 0


def test_verify_cyclotomic_round_trip(tmp_path):
    code, det_out, _ = run_cli(["det", WENGER, "--contracted"])
    assert code == 0
    _, fact_out, _ = run_cli(["factor", WENGER, "--contracted",
                              "--json"])
    (tmp_path / "w.det").write_text(det_out)
    (tmp_path / "w.json").write_text(fact_out)
    code, out, _ = run_cli(["verify", str(tmp_path / "w.det"),
                            str(tmp_path / "w.json")])
    assert code == 0, out


def test_verify_mismatch_exits_1(tmp_path):
    _, z4, _ = run_cli(["gen", "zmod_add", "4"])
    _, z5, _ = run_cli(["gen", "zmod_add", "5"])
    _, det_out, _ = run_cli(["det", "-"], stdin=z5)
    _, fact_out, _ = run_cli(["factor", "-", "--json"], stdin=z4)
    (tmp_path / "m.det").write_text(det_out)
    (tmp_path / "m.json").write_text(fact_out)
    code, out, _ = run_cli(["verify", str(tmp_path / "m.det"),
                            str(tmp_path / "m.json")])
    assert code == 1
    assert "mismatch" in out


def test_verify_rejects_test_reports(tmp_path):
    _, z5, _ = run_cli(["gen", "zmod_add", "5"])
    _, det_out, _ = run_cli(["det", "-"], stdin=z5)
    _, rep, _ = run_cli(["frobenius", "-", "--json"], stdin=z5)
    (tmp_path / "r.det").write_text(det_out)
    (tmp_path / "r.json").write_text(rep)
    code, _, err = run_cli(["verify", str(tmp_path / "r.det"),
                            str(tmp_path / "r.json")])
    assert code == 1
    assert "status" in err


def test_twisted_det_and_factor_agree(tmp_path):
    _, sgp, _ = run_cli(["gen", "three_nil", "10,01"])
    (tmp_path / "tn.sgp").write_text(sgp)
    (tmp_path / "tw.coc").write_text("s1 s1 -1\ns2 s2 -1\n")
    code, det_out, _ = run_cli(["det", str(tmp_path / "tn.sgp"),
                                "--twist", str(tmp_path / "tw.coc")])
    assert code == 0
    code, fact_out, _ = run_cli(["factor", str(tmp_path / "tn.sgp"),
                                 "--twist", str(tmp_path / "tw.coc"),
                                 "--json"])
    assert code == 0
    (tmp_path / "tn.det").write_text(det_out)
    (tmp_path / "tn.json").write_text(fact_out)
    code, out, _ = run_cli(["verify", str(tmp_path / "tn.det"),
                            str(tmp_path / "tn.json")])
    assert code == 0, out


def test_frobenius_reports():
    _, t2, _ = run_cli(["gen", "full_transform", "2"])
    code, out, _ = run_cli(["frobenius", "-", "--json"], stdin=t2)
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "not_frobenius"
    assert "fixes" in data["reason"]
    _, z5, _ = run_cli(["gen", "zmod_add", "5"])
    code, out, _ = run_cli(["frobenius", "-", "--json"], stdin=z5)
    data = json.loads(out)
    assert data["status"] == "frobenius"
    assert set(data["witness"]["point"]) == {f"x{i}" for i in range(5)}
    assert data["witness"]["determinant"] != 0


def test_info_and_mobius():
    _, sgp, _ = run_cli(["gen", "gcd", "4"])
    code, out, _ = run_cli(["info", "-", "--json"], stdin=sgp)
    data = json.loads(out)
    assert data["is_semilattice"] and data["is_commutative"]
    code, out, _ = run_cli(["mobius", "-", "--mode", "semilattice"],
                           stdin=sgp)
    assert code == 0
    code, out, _ = run_cli(["mobius", "-", "--mode", "semilattice",
                            "--json"], stdin=sgp)
    data = json.loads(out)
    assert data["matrix"][0][0] == 1
    rook = emit_sgp(build_family("rook", 2))
    code, _, _ = run_cli(["mobius", "-", "--mode", "inverse"], stdin=rook)
    assert code == 0


def test_groupoid_report():
    rook = emit_sgp(build_family("rook", 2))
    code, out, _ = run_cli(["groupoid", "-", "--json"], stdin=rook)
    assert code == 0
    data = json.loads(out)
    assert data["total_arrows"] == 7
    sizes = sorted((c["n_objects"], c["group_order"])
                   for c in data["components"])
    assert sum(k * k * g for k, g in sizes) == 7


def test_ringcheck():
    code, out, _ = run_cli(["ringcheck", "zmod", "2", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "frobenius"
    assert data["determinant"] == "-2"
    code, out, _ = run_cli(["ringcheck", "matmonoid", "1", "4", "--json"])
    data = json.loads(out)
    assert data["status"] == "frobenius"
    assert data["size"] == 4


def test_kovacs():
    code, out, _ = run_cli(["kovacs", "2", "2", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is True
    assert data["q_binomials"] == [1, 3, 1]
    assert data["subspaces_agree"] is True


def test_byte_determinism():
    for argv in (["factor", WENGER, "--contracted", "--json",
                  "--seed", "3"],
                 ["factor", WENGER, "--contracted"],
                 ["smith", "12", "--json"]):
        a = run_cli(list(argv))
        b = run_cli(list(argv))
        assert a == b


def test_exit_codes():
    code, _, err = run_cli(["factor", "/no/such/file.sgp"])
    assert code == 1 and "error:" in err
    code, _, err = run_cli(["kovacs", "5", "2"])
    assert code == 1 and "outside" in err
    code, _, err = run_cli(["gen", "nosuch", "1"])
    assert code == 1
    code, _, _ = run_cli(["smith"])
    assert code == 2
    code, _, _ = run_cli(["nosuchcommand"])
    assert code == 2
    code, _, err = run_cli(["smith", "6", "--threads", "0"])
    assert code == 2


def test_gen_adjoin_takes_sgp_input():
    _, z3, _ = run_cli(["gen", "zmod_add", "3"])
    code, out, _ = run_cli(["gen", "adjoin_zero", "-"], stdin=z3)
    assert code == 0
    assert "zero z" in out
    code, out, _ = run_cli(["factor", "-", "--json"], stdin=out)
    assert json.loads(out)["provenance"] == "clifford-mobius"


def test_det_contracted_excludes_zero_variable():
    code, out, _ = run_cli(["det", WENGER, "--contracted",
                            "--json"])
    assert code == 0
    data = json.loads(out)
    assert "x8" not in data["determinant"]
    assert data["degree"] == 8
