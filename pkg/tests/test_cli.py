import io
import json

import pytest

from causal2d.cli import BAD_INPUT, FAIL, PASS, run

IDENTITY = {"kind": "proper",
            "phi": {"anchors": [["0", "0"], ["1", "1"]], "left_slope": "1", "right_slope": "1"},
            "psi": {"anchors": [["0", "0"], ["1", "1"]], "left_slope": "1", "right_slope": "1"}}
HALVING = {"kind": "proper",
           "phi": {"anchors": [["0", "0"], ["1", "1/2"]], "c": "1/2"},
           "psi": {"anchors": [["0", "0"], ["1", "1/2"]], "c": "1/2"}}
QUARTER = {"kind": "proper",
           "phi": {"anchors": [["0", "1/4"], ["1", "5/4"]], "c": "1"},
           "psi": {"anchors": [["0", "1/4"], ["1", "5/4"]], "c": "1"}}
REFLECT = {"kind": "flip",
           "phi": {"anchors": [["0", "0"], ["1", "-1"]], "left_slope": "-1", "right_slope": "-1"},
           "psi": {"anchors": [["0", "0"], ["1", "-1"]], "left_slope": "-1", "right_slope": "-1"}}
KINK = {"anchors": [["0", "0"], ["1", "2"]], "left_slope": "1", "right_slope": "1"}
STRIP = {"u_range": ["-inf", "inf"],
         "lower": {"anchors": [["0", "-2"], ["1", "-1"]], "left_slope": "1", "right_slope": "1"},
         "upper": {"anchors": [["0", "2"], ["1", "3"]], "left_slope": "1", "right_slope": "1"}}
CUBIC = {"kind": "proper", "phi": {"family": "cubicplus", "a": 1.0},
         "psi": {"family": "cubicplus", "a": 1.0}}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, obj in dict(identity=IDENTITY, halving=HALVING, quarter=QUARTER, reflect=REFLECT,
                          kink=KINK, strip=STRIP, cubic=CUBIC).items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        out[name] = str(p)
    return out


def call(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text else None), text


def test_apply_identity(files):
    code, out, _ = call("apply", files["identity"], "--point", "3,4")
    assert code == PASS and out == {"x": "3", "t": "4"}


def test_descend_halving(files):
    code, out, _ = call("descend", files["halving"], "-n", 3)
    assert code == FAIL
    assert out["verdict"] == "not_well_defined" == out["brute_verdict"]
    assert out["literal_condition"] is True


def test_descend_rotation(files):
    code, out, _ = call("descend", files["quarter"], "-n", 2)
    assert code == PASS and out["verdict"] == "automorphism"
    assert {"p": {"theta": "0", "t": "0"}, "image": {"theta": "1/4", "t": "0"}} in out["samples"]


def test_conformal_cubic(files):
    code, out, _ = call("conformal-check", files["cubic"], "--at", "1,0")
    assert code == PASS
    assert out["lambda"] == pytest.approx(9, abs=1e-4) and out["defect"] < 1e-6
    code, out, _ = call("conformal-check", files["cubic"], "--at", "0,0")
    assert code == FAIL and out["verdict"] == "degenerate"


def test_verify_and_orbit(files):
    code, out, _ = call("verify-auto", files["reflect"], "--samples", 300)
    assert code == PASS and out["checked"] == 300
    code, out, _ = call("orbit", files["quarter"], "--point", "0,1", "--steps", 4, "--space", "cyl")
    assert [p["theta"] for p in out["orbit"]] == ["0", "1/4", "1/2", "3/4", "0"]


def test_embed(files):
    code, out, _ = call("embed", files["kink"], files["strip"], "--samples", 40)
    assert code == PASS
    assert out["route_agreement"] and out["membership"] and out["order_iso"]


def test_grid_check(files):
    code, out, _ = call("grid-check", "--space", "flat", "-n", 1)
    assert code == PASS and out["edges"] == 23 and out["partial_order"]
    code, out, _ = call("grid-check", "--space", "cyl", "-n", 2, "--export")
    assert code == PASS and len(out["grid"]["nodes"]) == out["points"] == 25


class TestBadInput:
    def test_missing_file(self, tmp_path):
        assert call("invert", tmp_path / "nope.json")[0] == BAD_INPUT

    def test_names_the_field(self, files, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"kind": "proper", "phi": {"left_slope": "1", "right_slope": "1"}, "psi": KINK}))
        assert call("apply", bad, "--point", "0,0")[0] == BAD_INPUT
        assert "bad.json.phi: missing field 'anchors'" in capsys.readouterr().err

    def test_direction_mismatch(self, tmp_path, capsys):
        bad = tmp_path / "mixed.json"
        bad.write_text(json.dumps(dict(REFLECT, kind="proper")))
        assert call("verify-auto", bad)[0] == BAD_INPUT
        assert "increasing" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        ["apply", "{identity}", "--point", "1"],
        ["apply", "{identity}", "--point", "0.5,1"],
        ["verify-auto", "{identity}", "--samples", "0"],
        ["grid-check", "-n", "0"],
        ["frobnicate"],
        ["quotient-compose", "{halving}", "{identity}"],
    ])
    def test_exit_two(self, files, argv):
        argv = [a.format(**files) for a in argv]
        assert call(*argv)[0] == BAD_INPUT


def test_deterministic(files, tmp_path):
    a = call("verify-auto", files["quarter"], "--seed", 5, "--samples", 200, "-o", tmp_path / "a.json")
    b = call("verify-auto", files["quarter"], "--seed", 5, "--samples", 200, "-o", tmp_path / "b.json")
    assert a[2] == b[2]
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_round_trip(files, tmp_path):
    def save(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return p

    _, comp, _ = call("compose", files["quarter"], files["reflect"])
    _, back, _ = call("compose", save("comp.json", comp), files["identity"])
    assert back == comp
    _, inv, _ = call("invert", files["kink"])
    _, again, _ = call("invert", save("inv.json", inv))
    assert again == KINK | {"direction": "inc"}
    _, q, _ = call("quotient-compose", files["quarter"], files["quarter"])
    code, out, _ = call("apply", save("q.json", q), "--point", "0,0")
    assert code == PASS and out == {"x": "1/2", "t": "0"}
    _, emb, _ = call("embed", files["kink"], files["strip"], "--samples", 10)
    code, _, _ = call("embed", files["kink"], save("img.json", emb["image_domain"]), "--samples", 10)
    assert code == PASS
