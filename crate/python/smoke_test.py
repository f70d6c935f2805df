#!/usr/bin/env python3
"""Smoke test for the orbitor_py extension module.

Builds the module with cargo if needed, imports it, and checks a handful of
known values end to end. Run from anywhere:

    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_library() -> pathlib.Path:
    candidates = [
        ROOT / "target" / profile / "liborbitor_py.so"
        for profile in ("release", "debug")
    ]
    for so in candidates:
        if so.exists():
            return so
    subprocess.run(["cargo", "build", "-p", "orbitor-py"], cwd=ROOT, check=True)
    return candidates[-1]


def check_linalg(orbitor_py) -> None:
    d, u, v = orbitor_py.smith_normal_form([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]], d
    assert len(u) == 2 and len(v) == 2
    assert orbitor_py.determinant([[2, 1], [1, 2]]) == 3
    assert orbitor_py.invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert orbitor_py.primitive_vector([4, 6]) == [2, 3]
    assert orbitor_py.saturate_lattice([[2, 0], [0, 3]]) == [[1, 0], [0, 1]]
    big = 2**100
    assert orbitor_py.determinant([[big]]) == big, "arbitrary precision"


def check_toric_pair(orbitor_py) -> None:
    cube = (ROOT / "samples" / "cube.json").read_text()
    pair = orbitor_py.ToricPair.from_json(cube)
    assert pair.dimension() == 3
    assert pair.candidate_primes() == [2, 3]
    orders = {
        vertex: pair.local_group_order("whole", vertex)
        for vertex in ("v125", "v235", "v146")
    }
    assert orders == {"v125": 2, "v235": 1, "v146": 6}, orders

    report = json.loads(pair.report_json())
    assert report["kind"] == "toric_orbifold"
    assert sorted(report["verdicts"]) == ["2", "3"]
    assert all(v["status"] == "certified" for v in report["verdicts"].values())
    assert report["bss"]["status"] == "fails"

    induced = json.loads(pair.induced_json("F6"))
    assert induced["target_rank"] == 2
    assert induced["lambda"]["F2"] == ["-1", "0"]

    rebuilt = orbitor_py.ToricPair.from_json(pair.to_json())
    assert rebuilt.order_table() == pair.order_table()

    try:
        pair.presentation_json()
    except ValueError as refusal:
        raise AssertionError(f"cube should be certified: {refusal}")


def check_other_reports(orbitor_py) -> None:
    qcw = json.loads(
        orbitor_py.qcw_report_json('{"cells": [{"dim": 0}, {"dim": 4, "order": 3}]}')
    )
    assert qcw["kind"] == "qcw"
    assert qcw["all_primes"]["inconclusive_primes"] == [3]

    grass = json.loads(orbitor_py.grassmann_report_json(2, 4, [1, 1, 1, 1], 1))
    assert grass["kind"] == "weighted_grassmannian"
    assert len(grass["cells"]) == 6
    assert grass["all_primes"]["inconclusive_primes"] == [3]

    plain = json.loads(orbitor_py.grassmann_report_json(2, 4))
    assert plain["all_primes"]["inconclusive_primes"] == []


def check_cli(orbitor_py) -> None:
    code, out, err = orbitor_py.run_cli(
        ["analyze-toric", "--input", str(ROOT / "samples" / "cube.json"), "--format", "json"]
    )
    assert code == 0, err
    assert json.loads(out)["summary"]["certified_primes"] == [2, 3]
    code, _, err = orbitor_py.run_cli(["analyze-toric", "--inline", "not json"])
    assert code == 2 and "error" in err


def main() -> None:
    so = find_library()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy2(so, pathlib.Path(tmp) / "orbitor_py.so")
        sys.path.insert(0, tmp)
        import orbitor_py

        check_linalg(orbitor_py)
        check_toric_pair(orbitor_py)
        check_other_reports(orbitor_py)
        check_cli(orbitor_py)
    print("smoke test passed")


if __name__ == "__main__":
    main()
