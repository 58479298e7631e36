import io
import json
from importlib import resources

import pytest

from cubecomp.bqf import BQF
from cubecomp.cli import main
from cubecomp.cubes import identity_cube
from cubecomp.symspaces import BinaryCubic, cubic_identity
from cubecomp.wire import dumps_envelope, parse_envelope
from tests.worked_examples import CUBE_A, CUBE_B, CUBE_C


def _fixture_path(name):
    return str(resources.files("cubecomp").joinpath("fixtures").joinpath(name))


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----- classgroup ---------------------------------------------------------


def test_classgroup_disc_m47(capsys):
    code, out, err = _run(capsys, ["classgroup", "--discriminant", "-47"])
    assert code == 0
    assert "10 narrow classes, 5 positive definite" in out
    assert out.count("  positive definite") == 5
    assert "[1, 1, 12]" in out


def test_classgroup_disc_m4(capsys):
    code, out, err = _run(capsys, ["classgroup", "--discriminant", "-4"])
    assert code == 0
    assert "[1, 0, 1]" in out
    assert "1 positive definite" in out


def test_classgroup_rejects_disc_3_mod_4(capsys):
    code, out, err = _run(capsys, ["classgroup", "--discriminant", "7"])
    assert code == 2
    assert "error:" in err


def test_classgroup_rejects_square_disc(capsys):
    code, out, err = _run(capsys, ["classgroup", "--discriminant", "16"])
    assert code == 3


def test_classgroup_json_artifact(capsys):
    code, out, err = _run(
        capsys, ["classgroup", "--discriminant", "-23", "--json"]
    )
    assert code == 0
    data = json.loads(out)
    art = data["artifacts"][0]
    assert art["class_count"] == "6"
    assert art["posdef_count"] == "3"
    reps = art["representatives"]["objects"]
    assert len(reps) == 6
    assert len(art["table"]) == 6


# ----- compose ------------------------------------------------------------


def test_compose_bqf(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("bqf", -47, [BQF(2, 1, 6), BQF(2, -1, 6)]))
    code, out, err = _run(capsys, ["compose", "--in", str(p)])
    assert code == 0
    assert "[1, 1, 12]" in out


def test_compose_cube(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("cube", -47, [CUBE_A, CUBE_B]))
    code, out, err = _run(capsys, ["compose", "--in", str(p), "--json"])
    assert code == 0
    data = json.loads(out)
    art = data["artifacts"][0]
    assert art["objects"][0]["coeffs"] == ["0", "1", "4", "1", "1", "1", "4", "-2"]
    assert art["objects"][0]["role"] == "product"


def test_compose_cubic_certificate(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(
        dumps_envelope(
            "cubic", -23, [cubic_identity(-23), BinaryCubic(-3, -2, 0, 1)]
        )
    )
    code, out, err = _run(capsys, ["compose", "--in", str(p), "--json"])
    assert code == 0
    art = json.loads(out)["artifacts"][0]
    assert art["ideal_basis"] == [
        {"p": "24", "q": "0", "d": "1"},
        {"p": "12", "q": "2", "d": "1"},
    ]
    assert art["delta"] == {"p": "-336", "q": "8", "d": "1"}
    assert art["form_product"]["objects"][0]["coeffs"] == ["2", "-1", "3"]


def test_compose_rejects_pair_space(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(open(_fixture_path("pair_disc_m31.json")).read())
    code, out, err = _run(capsys, ["compose", "--in", str(p)])
    assert code == 2
    assert "cube space" in err


def test_compose_rejects_disc_mismatch(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("bqf", -47, [BQF(1, 1, 6), BQF(1, 1, 6)]))
    code, out, err = _run(capsys, ["compose", "--in", str(p)])
    assert code == 2


def test_compose_needs_two_forms(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("bqf", -47, [BQF(1, 1, 12)]))
    code, out, err = _run(capsys, ["compose", "--in", str(p)])
    assert code == 2


# ----- verify -------------------------------------------------------------


@pytest.mark.parametrize(
    "law,fixture",
    [
        ("cube", "cube_disc_m47.json"),
        ("cubic", "cubic_disc_8.json"),
        ("pair", "pair_disc_m31.json"),
        ("quat", "quat_disc_m47.json"),
    ],
)
def test_verify_bundled_fixture(law, fixture, capsys):
    code, out, err = _run(
        capsys, ["verify", "--law", law, "--in", _fixture_path(fixture)]
    )
    assert code == 0
    assert "verified" in out


def test_verify_gauss_single_cube(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("cube", -47, [CUBE_A]))
    code, out, err = _run(capsys, ["verify", "--law", "gauss", "--in", str(p)])
    assert code == 0


def test_verify_perturbed_witness_reports_tuple(tmp_path, capsys):
    env = parse_envelope(open(_fixture_path("cube_disc_m47.json")).read())
    objs = env.objects
    co = list(objs[3].coeffs)
    co[0] += 1
    objs[3] = type(objs[3])(tuple(co))
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("cube", -47, objs))
    code, out, err = _run(
        capsys, ["verify", "--law", "cube", "--in", str(p), "--json"]
    )
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "failed"
    assert any("basis tuple" in r for r in data["reasons"])


def test_verify_senary(capsys):
    code, out, err = _run(
        capsys, ["verify", "--law", "senary", "--discriminant", "-47"]
    )
    assert code == 0


def test_verify_senary_needs_discriminant(capsys):
    code, out, err = _run(capsys, ["verify", "--law", "senary"])
    assert code == 2


def test_verify_needs_infile(capsys):
    code, out, err = _run(capsys, ["verify", "--law", "cube"])
    assert code == 2


def test_verify_rejects_malformed_json(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text("{oops")
    code, out, err = _run(capsys, ["verify", "--law", "cube", "--in", str(p)])
    assert code == 2


def test_verify_missing_file(capsys):
    code, out, err = _run(
        capsys, ["verify", "--law", "cube", "--in", "/nonexistent/x.json"]
    )
    assert code == 2


def test_verify_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(
        "sys.stdin", io.StringIO(dumps_envelope("cube", -47, [CUBE_A]))
    )
    code, out, err = _run(capsys, ["verify", "--law", "gauss", "--in", "-"])
    assert code == 0


# ----- dual ---------------------------------------------------------------


def test_dual_worked_triple(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("cube", -47, [CUBE_A, CUBE_B, CUBE_C]))
    code, out, err = _run(capsys, ["dual", "--in", str(p)])
    assert code == 0
    assert "witness R:" in out and "witness T:" in out
    assert "verified" in out


def test_dual_rejects_positive_disc(tmp_path, capsys):
    p = tmp_path / "in.json"
    A = identity_cube(8)
    p.write_text(dumps_envelope("cube", 8, [A, A, A]))
    code, out, err = _run(capsys, ["dual", "--in", str(p)])
    assert code == 3


def test_dual_rejects_noncomposable_classes(tmp_path, capsys):
    p = tmp_path / "in.json"
    p.write_text(dumps_envelope("cube", -47, [CUBE_A, CUBE_A, CUBE_A]))
    code, out, err = _run(capsys, ["dual", "--in", str(p)])
    assert code == 2
    assert "not composable" in err


# ----- examples and output modes ------------------------------------------


def test_examples_all_pass(capsys):
    code, out, err = _run(capsys, ["examples"])
    assert code == 0
    assert "4/4 worked examples verified" in out
    assert out.count("PASS") == 4


def test_examples_json(capsys):
    code, out, err = _run(capsys, ["examples", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "verified"
    assert len(data["artifacts"]) == 4
    assert all(a["verdict"] == "verified" for a in data["artifacts"])


def test_json_report_shape(capsys):
    code, out, err = _run(
        capsys,
        ["verify", "--law", "cube", "--in", _fixture_path("cube_disc_m47.json"),
         "--json"],
    )
    assert code == 0
    data = json.loads(out)
    assert set(data) == {
        "command", "verdict", "reasons", "artifacts", "elapsed_seconds",
    }
    assert data["command"] == "verify cube"
    assert data["verdict"] == "verified"
    assert data["reasons"] == []
    float(data["elapsed_seconds"])


def test_output_is_deterministic(capsys):
    def one_run():
        code, out, err = _run(
            capsys, ["classgroup", "--discriminant", "-47", "--json"]
        )
        assert code == 0
        data = json.loads(out)
        data.pop("elapsed_seconds")
        return data

    assert one_run() == one_run()
