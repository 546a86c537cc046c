"""Exit codes, document composition and report determinism for the CLI."""

import json

import pytest

from equicover import cli, serialize
from equicover.algebras import functions_on_group, trivial_algebra
from equicover.groups import FiniteGroup
from equicover.scalars import QQ, cyclotomic_field


def run(argv):
    return cli.main(argv)


def torsor_path(tmp_path, name="S3"):
    g = FiniteGroup.symmetric(3)
    alg = functions_on_group(g, cyclotomic_field(3))
    p = tmp_path / f"{name}.json"
    serialize.dump_document(str(p), serialize.algebra_to_json(alg))
    return str(p)


def test_irreps_json_document(tmp_path, capsys):
    out = tmp_path / "irr.json"
    assert run(["irreps", "--group", "S3", "--out", str(out)]) == 0
    doc = serialize.load_document(str(out), "irreps")
    assert [r["dim"] for r in doc["irreps"]] == [1, 1, 2]


def test_irreps_c1_single_trivial(capsys):
    assert run(["irreps", "--group", "C1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["irreps"]) == 1
    assert doc["irreps"][0]["dim"] == 1


def test_omega_and_is_cover(tmp_path, capsys):
    path = torsor_path(tmp_path)
    assert run(["omega", "--algebra", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ranks"] == [1, 1, 2]
    assert doc["is_cover"] is True
    assert run(["is-cover", "--algebra", path]) == 0
    assert json.loads(capsys.readouterr().out)["is_cover"] is True
    assert run(["is-torsor", "--algebra", path]) == 0
    assert json.loads(capsys.readouterr().out)["is_torsor"] is True


def test_induce_emits_composable_algebra_document(tmp_path, capsys):
    h = FiniteGroup.cyclic(3)
    base = tmp_path / "base.json"
    serialize.dump_document(
        str(base), serialize.algebra_to_json(trivial_algebra(h, cyclotomic_field(3)))
    )
    out = tmp_path / "ind.json"
    code = run(
        [
            "induce",
            "--group",
            "S3",
            "--subgroup",
            "0,3,4",
            "--algebra",
            str(base),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    alg = serialize.algebra_from_json(serialize.load_document(str(out), "algebra"))
    assert alg.dim == 2
    # and the emitted document feeds straight back into other commands
    assert run(["split", "--algebra", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["connected"] is False
    assert sorted(doc["subgroup"]) == [0, 3, 4]
    assert doc["verified"] is True


def test_build_algebra_roundtrip(tmp_path, capsys):
    path = torsor_path(tmp_path)
    g = FiniteGroup.symmetric(3)
    field = cyclotomic_field(3)
    from equicover.algebras import algebra_to_functor
    from equicover.reps import IrrepSet

    basis = IrrepSet.compute(g, field)
    alg = serialize.algebra_from_json(serialize.load_document(path, "algebra"))
    fpath = tmp_path / "functor.json"
    serialize.dump_document(
        str(fpath), serialize.functor_to_json(algebra_to_functor(alg, basis))
    )
    out = tmp_path / "rebuilt.json"
    assert run(["build-algebra", "--functor", str(fpath), "--out", str(out)]) == 0
    assert run(["is-torsor", "--algebra", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["is_torsor"] is True


def test_witness_report_carries_matrices(capsys):
    assert run(["witness", "--group", "S3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ranks"] == [1, 2, 0]
    assert doc["prime"] == 2
    assert doc["verdicts"]["induced_is_cover"] is True
    # enough structure to recheck independently
    assert "irreps" in doc["characters"]
    assert "structure" in doc["induced_algebra"]
    assert "structure" in doc["base_algebra"]


def test_ramify_kummer_and_report_alias(capsys):
    assert run(["ramify", "--kummer", "2,1", "--field", "Q"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["disc_valuation"] == 1
    assert doc["tame"]["cond2"] is True
    assert doc["tame"]["cond4"] is True
    assert doc["tame"]["cond5"] is True
    assert run(["ramify", "--kummer", "2,1", "--field", "Q", "--report", "text"]) == 0
    text = capsys.readouterr().out
    assert "discriminant valuation: 1" in text


def test_ramify_on_algebra_document(tmp_path, capsys):
    from equicover.ramification import kummer_builder

    cover = kummer_builder(3, 1, cyclotomic_field(3))
    p = tmp_path / "cover.json"
    serialize.dump_document(str(p), serialize.algebra_to_json(cover.algebra))
    assert run(["ramify", "--algebra", str(p)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["disc_valuation"] == 2
    assert doc["section_valuations"] == [0, 1, 1]
    assert doc["trace_identity"]["ok"] is True


def test_ramify_infinite_valuation_serializes_as_null(tmp_path, capsys):
    import numpy as np

    from equicover.algebras import EquivariantAlgebra
    from equicover.linalg import identity
    from equicover.scalars import PolyRing

    ring = PolyRing(QQ)
    g = FiniteGroup.cyclic(1)
    mult = np.empty((2, 2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                mult[i, j, k] = ring.zero()
    mult[0, 0, 0] = ring.one()
    mult[0, 1, 1] = ring.one()
    mult[1, 0, 1] = ring.one()
    unit = np.array([ring.one(), ring.zero()], dtype=object)
    alg = EquivariantAlgebra(g, ring, mult, unit, [identity(2, ring)])
    p = tmp_path / "degenerate.json"
    serialize.dump_document(str(p), serialize.algebra_to_json(alg))
    assert run(["ramify", "--algebra", str(p)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["disc_valuation"] is None
    assert doc["tame"]["cond2"] is False


def test_exit_code_contract(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"wrong": true}')
    assert run(["omega", "--algebra", str(bad)]) == 2
    assert run(["irreps", "--group", "S5"]) == 4
    assert run(["irreps", "--group", "C7", "--field", "Q"]) == 3
    assert run(["irreps", "--group", "C3", "--field", "Fp:3"]) == 3
    capsys.readouterr()


def test_selftest_serial_parallel_identical(tmp_path):
    a = tmp_path / "serial.json"
    b = tmp_path / "parallel.json"
    assert run(["selftest", "--seed", "3", "--out", str(a)]) == 0
    assert run(["selftest", "--seed", "3", "--jobs", "4", "--out", str(b)]) == 0
    da = json.loads(a.read_text())
    db = json.loads(b.read_text())
    assert da["seed"] == 3
    for d in (da, db):
        d.pop("timings")
        d.pop("jobs")
    assert da == db
    assert da["ok"] is True


def test_selftest_failure_exits_nonzero(monkeypatch, capsys):
    def broken(seed, jobs):
        return [("planted", False)]

    monkeypatch.setattr(cli, "_SUITES", [("broken", broken)])
    assert run(["selftest"]) == 1
    out = capsys.readouterr().out
    assert '"ok": false' in out
