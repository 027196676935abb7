import json
import subprocess
import sys

import pytest

from boolcum import opvalued as ov
from boolcum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_bconv_add(capsys):
    code, out = run(capsys, "bconv-add", '{"order":2,"moments":["1","1"]}', '["1","1"]')
    assert code == 0
    assert json.loads(out.out) == {"order": 2, "moments": ["2", "4"]}


def test_moments_to_cumulants(capsys):
    code, out = run(capsys, "moments-to-cumulants", '["1","1","1"]')
    assert json.loads(out.out)["cumulants"] == ["1", "0", "0"]


def test_conversions_roundtrip_through_files(capsys, tmp_path):
    src = tmp_path / "m.json"
    src.write_text(json.dumps({"order": 3, "moments": ["1", "2", "6"]}))
    code, out = run(capsys, "moments-to-cumulants", str(src))
    assert code == 0 and json.loads(out.out)["cumulants"] == ["1", "1", "3"]
    code, back = run(capsys, "cumulants-to-moments", out.out)
    assert json.loads(back.out) == {"order": 3, "moments": ["1", "2", "6"]}


def test_order_truncates(capsys):
    code, out = run(capsys, "btransform", '["1","2","6"]', "-n", "2")
    assert json.loads(out.out) == {"order": 2, "coeffs": ["1", "1"]}
    code, out = run(capsys, "btransform", '["1"]', "-n", "2")
    assert code == 1


def test_bconv_mul_shift(capsys):
    _, plain = run(capsys, "bconv-mul", '["1","2"]', '["3","4"]')
    _, shifted = run(capsys, "bconv-mul", '["1","2"]', '["3","4"]', "--shift")
    mZ = json.loads(plain.out)["moments"]
    m1, m2 = (int(v) for v in mZ)
    assert json.loads(shifted.out)["moments"] == [str(1 + m1), str(1 + 2 * m1 + m2)]


@pytest.mark.parametrize(
    "argv",
    [
        ["moments-to-cumulants", "[1.5]"],
        ["moments-to-cumulants", "{not json"],
        ["moments-to-cumulants", "/no/such/file.json"],
        ["moments-to-cumulants", '["1/0"]'],
        ["bconv-add", '["1"]'],
        ["bconv-add", '["1"]', '["1","2"]'],
        ["verify", '["1"]'],
        ["frobnicate"],
        ["verify", "-n", "0"],
        ["ov-convert", '{"foo": 1}'],
    ],
)
def test_malformed_input_exits_1(capsys, argv):
    assert main(argv) == 1


def test_ov_convert_roundtrip(capsys, tmp_path, rng):
    dist = ov.random_distribution(rng, 3, 2)
    code, out = run(capsys, "ov-convert", json.dumps(dist.to_json()), "-d", "2")
    assert code == 0
    B = ov.MulSeries.from_json(json.loads(out.out))
    assert B == ov.ov_moments_to_cumulants(dist)
    code, back = run(capsys, "ov-convert", out.out)
    assert ov.OVDistribution.from_json(json.loads(back.out)) == dist
    assert main(["ov-convert", json.dumps(dist.to_json()), "-d", "3"]) == 1


def test_ov_convolutions(capsys, rng):
    s = ov.random_joint_state(rng, 3, 2)
    joint = json.dumps(s.to_json())
    _, out = run(capsys, "ov-bconv-add", joint)
    assert ov.MulSeries.from_json(json.loads(out.out)) == ov.ov_bconv_add(s)
    X, Y = (json.dumps(d.to_json()) for d in (s.distX, s.distY))
    _, out = run(capsys, "ov-bconv-mul", X, Y, "--shift")
    assert ov.MulSeries.from_json(json.loads(out.out)) == ov.ov_bconv_mul(s, shift=True)


def test_verify_report_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out = run(capsys, "verify", "--seed", "1", "-n", "5", "--cases", "5", "--report", str(path))
    assert code == 0
    assert path.read_text() == out.out
    report = json.loads(out.out)
    assert report["ok"] and report["parameters"] == {"cases": 5, "order": 5, "seed": 1}


def test_identity_failure_exits_2(capsys, monkeypatch):
    from boolcum import scalar as sc

    monkeypatch.setattr(sc, "shift_one", lambda b: b)
    code, out = run(capsys, "verify", "-n", "4", "--cases", "3")
    assert code == 2
    report = json.loads(out.out)
    assert not report["ok"] and any(c["failures"] for c in report["checks"])


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "boolcum", "moments-to-cumulants", '["1","2","6"]'],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["cumulants"] == ["1", "1", "3"]
