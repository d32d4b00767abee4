"""Document parsing, serialization round-trips, and the CLI surface."""

import json
import os
import subprocess
import sys
from collections import Counter
from fractions import Fraction

import pytest

from rzero.barcode import Interval, PointedBarcode
from rzero.errors import InputError
from rzero.exact import ExactRadius
from rzero.io import (
    decode_radius,
    dumps,
    encode_radius,
    parse_barcode,
    parse_input,
    serialize_barcode,
    serialize_input,
)

from inputs import as_document, edge_map, grid_identity_map, octagon_winding2_map

CLI = [sys.executable, "-m", "rzero.cli"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, text=True, env=env)


def test_radius_encoding_round_trip():
    for r in (ExactRadius.of(0), ExactRadius.of(Fraction(-3, 7)),
              ExactRadius.sqrt(2), ExactRadius(5, 2), ExactRadius.of(4)):
        assert decode_radius(encode_radius(r)) == r
    assert encode_radius(ExactRadius.sqrt(25)) == {"rat": "5"}
    assert encode_radius(ExactRadius.sqrt(Fraction(1, 2))) == {"sqrt": "1/2"}


def test_parse_input_round_trip():
    for f in (edge_map(), grid_identity_map(), octagon_winding2_map()):
        again = parse_input(json.dumps(serialize_input(f)))
        assert again.complex.simplices == f.complex.simplices
        assert again.values == f.values
        assert (again.n, again.norm) == (f.n, f.norm)


def test_parse_input_errors():
    doc = json.loads(as_document(edge_map()))
    bad = dict(doc)
    bad["simplices"] = [["p", "undeclared"]]
    with pytest.raises(InputError) as err:
        parse_input(json.dumps(bad))
    assert "undeclared" in str(err.value)

    bad = dict(doc)
    bad["values"] = {"p": ["-1"], "q": ["0.5x"]}
    with pytest.raises(InputError):
        parse_input(json.dumps(bad))

    bad = dict(doc)
    bad["values"] = {"p": ["-1", "2"], "q": ["1"]}
    with pytest.raises(InputError):
        parse_input(json.dumps(bad))

    with pytest.raises(InputError):
        parse_input("not json")


def test_barcode_document_round_trip():
    one = Interval(ExactRadius.of(0), ExactRadius.of(1))
    two = Interval(ExactRadius.of(0), ExactRadius.sqrt(2))
    barcode = PointedBarcode.from_multiset(Counter({one: 2, two: 1}), one)
    doc = serialize_barcode(
        barcode, mode="hopf", field="q",
        criticals=[ExactRadius.of(1)], has_zero_min=True,
        robust_radius=ExactRadius.of(1), seeds={"seed": 1}, determinacy=False,
    )
    again = parse_barcode(json.dumps(doc))
    assert again.same_as(barcode)
    flagged = [row for row in doc["bars"] if row["distinguished"]]
    assert len(flagged) == 1 and flagged[0]["multiplicity"] == 1


def test_output_byte_stable(tmp_path):
    path = tmp_path / "edge.json"
    path.write_text(as_document(edge_map()))
    a = run_cli("barcode", str(path), "--field", "f2")
    b = run_cli("barcode", str(path), "--field", "f2")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_cli_robust_radius_edge(tmp_path):
    path = tmp_path / "edge.json"
    path.write_text(as_document(edge_map()))
    out = run_cli("robust-radius", str(path))
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["robust_radius"] == {"rat": "1"}
    assert doc["mode"] == "signs"


def test_cli_barcode_grid(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(as_document(grid_identity_map()))
    out = run_cli("barcode", str(path), "--mode", "hopf", "--field", "f2")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["bars"] == [{
        "birth": {"rat": "0"}, "death": {"rat": "1"},
        "distinguished": True, "multiplicity": 1,
    }]
    assert doc["robust_radius"] == {"rat": "1"}


def test_cli_bottleneck_same_input(tmp_path):
    path = tmp_path / "edge.json"
    path.write_text(as_document(edge_map()))
    out = run_cli("bottleneck", str(path), str(path))
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"distance": {"rat": "0"}}


def test_cli_bottleneck_on_barcode_documents(tmp_path):
    grid = tmp_path / "grid.json"
    grid.write_text(as_document(grid_identity_map()))
    bar = run_cli("barcode", str(grid), "--mode", "hopf", "--field", "q")
    doc_path = tmp_path / "bar.json"
    doc_path.write_text(bar.stdout)
    out = run_cli("bottleneck", str(doc_path), str(doc_path))
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"distance": {"rat": "0"}}


def test_cli_perturb_round_trip(tmp_path):
    path = tmp_path / "edge.json"
    path.write_text(as_document(edge_map()))
    out = run_cli("perturb", str(path), "--delta", "1/10", "--seed", "42")
    assert out.returncode == 0
    g = parse_input(out.stdout)
    assert g.complex.simplices == edge_map().complex.simplices
    assert g.values != edge_map().values


def test_cli_exit_codes(tmp_path):
    # 1: malformed input
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    out = run_cli("criticals", str(bad))
    assert out.returncode == 1
    assert "missing field" in out.stderr

    # 2: no applicable mode (n = 3, dim X = 5)
    high = tmp_path / "high.json"
    vertices = [f"u{i}" for i in range(6)]
    doc = {
        "n": 3, "norm": "linf",
        "vertices": vertices,
        "simplices": [vertices],
        "values": {v: ["1", "1", "1"] for v in vertices},
    }
    high.write_text(json.dumps(doc))
    out = run_cli("criticals", str(high))
    assert out.returncode == 2
    assert "mode" in out.stderr


def test_cli_seed_env(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(as_document(grid_identity_map()))
    a = run_cli("barcode", str(path), "--mode", "hopf", "--field", "q",
                env_extra={"RZERO_SEED": "123"})
    b = run_cli("barcode", str(path), "--mode", "hopf", "--field", "q",
                "--seed", "123")
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["seeds"]["seed"] == 123


def test_cli_check_and_fuzz(tmp_path):
    path = tmp_path / "edge.json"
    path.write_text(as_document(edge_map()))
    out = run_cli("check", str(path))
    assert out.returncode == 0
    assert json.loads(out.stdout)["passed"] is True
    out = run_cli("fuzz", str(path), "--delta", "1/10", "--trials", "3", "--seed", "5")
    assert out.returncode == 0
    assert json.loads(out.stdout)["passed"] is True
