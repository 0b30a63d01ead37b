"""Command-line behaviors: pipelines, bench harness, exit codes."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from qoracle import emit, pla
from qoracle.cli import main

from conftest import BENCH_DIR

SQUAR5 = str(BENCH_DIR / "squar5.pla")


def read_metrics(path: Path) -> dict:
    return json.loads(path.read_text())


@pytest.mark.parametrize(
    "method,qubits", [("esop", 13), ("esop-rtt", 18), ("tbs", 9)]
)
def test_synth_squar5_methods(tmp_path, method, qubits):
    out = tmp_path / "c.qasm"
    metrics = tmp_path / "m.json"
    code = main([
        "synth", "--in", SQUAR5, "--method", method,
        "--out", str(out), "--metrics", str(metrics),
    ])
    assert code == 0
    report = read_metrics(metrics)
    assert report["qubits"] == qubits
    assert report["status"] == "ok"
    assert out.read_text().startswith("OPENQASM 3.0;")


def test_synth_writes_netlist_roundtrip(tmp_path):
    out = tmp_path / "c.qasm"
    netlist = tmp_path / "c.json"
    assert main([
        "synth", "--in", SQUAR5, "--method", "esop",
        "--out", str(out), "--netlist", str(netlist),
    ]) == 0
    circuit = emit.from_json(netlist.read_text())
    assert circuit.width == 13
    assert emit.to_qasm(circuit) == out.read_text()


def test_synth_missing_file_exits_2(tmp_path):
    assert main([
        "synth", "--in", str(tmp_path / "nope.pla"), "--method", "esop",
        "--out", str(tmp_path / "c.qasm"),
    ]) == 2


def test_synth_too_large_exits_4(tmp_path):
    assert main([
        "synth", "--in", str(BENCH_DIR / "b11.pla"), "--method", "tbs",
        "--out", str(tmp_path / "c.qasm"),
    ]) == 4


def test_bench_small_matrix(tmp_path):
    csv_path = tmp_path / "rows.csv"
    code = main([
        "bench", "--dir", str(BENCH_DIR), "--methods", "esop",
        "--csv", str(csv_path),
    ])
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "function,inputs,outputs,method,qubits,gate_count,complexity,time_us,status"
    rows = [l.split(",") for l in lines[1:]]
    assert len(rows) == 12
    assert all(r[-1] == "ok" for r in rows)
    by_name = {r[0]: r for r in rows}
    assert by_name["squar5"][4] == "13"
    assert by_name["ex5"][4] == "71"


def test_bench_records_failures_as_rows(tmp_path):
    csv_path = tmp_path / "rows.csv"
    single = tmp_path / "bench"
    single.mkdir()
    for name in ("b11", "inc"):
        (single / f"{name}.pla").write_text((BENCH_DIR / f"{name}.pla").read_text())
    code = main([
        "bench", "--dir", str(single), "--methods", "esop-rtt,tbs",
        "--csv", str(csv_path), "--timeout-s", "600",
    ])
    assert code == 0
    rows = {(r.split(",")[0], r.split(",")[3]): r.split(",")
            for r in csv_path.read_text().splitlines()[1:]}
    assert rows[("b11", "esop-rtt")][-1] == "too_large"
    assert rows[("b11", "tbs")][-1] == "too_large"
    assert rows[("inc", "tbs")][-1] in ("timeout", "too_large")
    assert rows[("inc", "esop-rtt")][-1] == "ok"
    assert rows[("inc", "esop-rtt")][4] == "28"
    # Metric fields stay empty on failed rows.
    assert rows[("b11", "tbs")][4:8] == ["", "", "", ""]


def test_bench_timeout_yields_rows_not_crashes(tmp_path):
    csv_path = tmp_path / "rows.csv"
    single = tmp_path / "bench"
    single.mkdir()
    (single / "squar5.pla").write_text((BENCH_DIR / "squar5.pla").read_text())
    assert main([
        "bench", "--dir", str(single), "--methods", "esop,esop-rtt,tbs",
        "--csv", str(csv_path), "--timeout-s", "0",
    ]) == 0
    rows = [l.split(",") for l in csv_path.read_text().splitlines()[1:]]
    assert len(rows) == 3
    assert all(r[-1] == "timeout" for r in rows)


def test_bench_missing_directory_exits_2(tmp_path):
    assert main([
        "bench", "--dir", str(tmp_path / "nothing"), "--methods", "esop",
        "--csv", str(tmp_path / "rows.csv"),
    ]) == 2


def test_bench_deterministic_apart_from_timing(tmp_path):
    def run(path: Path) -> list[list[str]]:
        assert main([
            "bench", "--dir", str(BENCH_DIR), "--methods", "esop",
            "--csv", str(path),
        ]) == 0
        rows = [l.split(",") for l in path.read_text().splitlines()[1:]]
        return [r[:7] + r[8:] for r in rows]  # drop wall time

    assert run(tmp_path / "a.csv") == run(tmp_path / "b.csv")


def test_verify_roundtrip_and_corruption(tmp_path):
    out = tmp_path / "c.qasm"
    netlist = tmp_path / "c.json"
    assert main([
        "synth", "--in", SQUAR5, "--method", "esop",
        "--out", str(out), "--netlist", str(netlist),
    ]) == 0
    assert main([
        "verify", "--in", SQUAR5, "--circuit", str(netlist), "--mode", "preserve",
    ]) == 0

    doc = json.loads(netlist.read_text())
    doc["gates"] = doc["gates"][:-1]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    assert main([
        "verify", "--in", SQUAR5, "--circuit", str(broken), "--mode", "preserve",
    ]) == 3


def test_grover_deck_diamonds(tmp_path):
    out = tmp_path / "hist.csv"
    code = main([
        "grover", "--deck", "--query", "suit=diamonds,rank=10",
        "--iterations", "6", "--shots", "1024", "--seed", "7",
        "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "bitstring,count,probability"
    top_bits, top_count, _ = lines[1].split(",")
    assert top_bits == "101010"
    assert int(top_count) >= 1000


def test_grover_deck_clubs_auto(tmp_path):
    out = tmp_path / "hist.csv"
    assert main([
        "grover", "--deck", "--query", "suit=clubs", "--iterations", "auto",
        "--shots", "1024", "--seed", "7", "--out", str(out),
    ]) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
    nonzero = [r for r in rows if int(r[1]) > 0]
    assert len(nonzero) == 16
    assert all(r[0].startswith("00") for r in nonzero)


def test_grover_histogram_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main([
            "grover", "--deck", "--query", "rank=ace",
            "--shots", "1024", "--seed", "3", "--out", str(out),
        ]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_grover_from_pla_file(tmp_path):
    predicate = tmp_path / "pred.pla"
    predicate.write_text(".i 2\n.o 1\n11 1\n.e\n")
    out = tmp_path / "h.csv"
    assert main([
        "grover", "--pla", str(predicate), "--iterations", "auto",
        "--shots", "256", "--seed", "1", "--out", str(out),
    ]) == 0
    top = out.read_text().splitlines()[1].split(",")
    assert top[0] == "11"


def test_grover_needs_exactly_one_source(tmp_path):
    assert main([
        "grover", "--out", str(tmp_path / "h.csv"),
    ]) == 2


def test_bench_parallel_jobs_match_serial(tmp_path):
    small = tmp_path / "bench"
    small.mkdir()
    for name in ("squar5", "f51m"):
        (small / f"{name}.pla").write_text((BENCH_DIR / f"{name}.pla").read_text())

    def rows(path, jobs):
        assert main([
            "bench", "--dir", str(small), "--methods", "esop,tbs",
            "--csv", str(path), "--jobs", str(jobs),
        ]) == 0
        out = [l.split(",") for l in path.read_text().splitlines()[1:]]
        return [r[:7] + r[8:] for r in out]

    assert rows(tmp_path / "serial.csv", 1) == rows(tmp_path / "par.csv", 2)


def test_synth_partial_checks_only_covered_minterms(tmp_path):
    table = tmp_path / "t.pla"
    table.write_text(".i 3\n.o 1\n111 1\n000 1\n.e\n")
    from qoracle.cli import run_synthesis
    from qoracle import pla as pla_mod

    full = run_synthesis(pla_mod.parse_pla(table.read_text()), "esop")
    assert full.verification.checked == 8
    part = run_synthesis(pla_mod.parse_pla(table.read_text()), "esop", partial=True)
    assert part.verification.checked == 2 and part.verification.passed


def test_encode_roundtrip(tmp_path):
    src = tmp_path / "pairs.csv"
    src.write_text("0,0\n1,1\n52,8\n")
    out = tmp_path / "table.pla"
    assert main(["encode", "--csv", str(src), "--out", str(out)]) == 0
    table = pla.parse_pla(out.read_text())
    assert (table.n, table.m) == (6, 4)
    assert table.cubes[-1] == pla.Cube("110100", "1000")
