import os
import subprocess

import pytest

import qwallpaper as qw


def test_group_names():
    names = qw.group_names()
    assert len(names) == 17
    assert "p4g" in names


def test_z2_dimensions():
    assert qw.h2_z2_dimension("pg") == 1
    assert qw.h2_z2_dimension("pmm") == 8


def test_homology_and_cohomology():
    assert qw.homology("pg", 1) == "Z + Z2"
    assert qw.cohomology("pg", 2, "u1") == "0"
    assert qw.cohomology("p4", 2, "u1") == "U(1)"


def test_irrep_dim():
    assert qw.irrep_dim(1, 1, 1, 1) == 4
    assert qw.irrep_dim(1, 1, 0, 0) == 2


def test_errors_map_to_python():
    with pytest.raises(qw.DomainError):
        qw.h2_z2_dimension("p7")
    with pytest.raises(ValueError):
        qw.irrep_dim(2, 1, 0, 0)


def test_run_json():
    out = qw.run_json("classify", "--group", "pg", "--coeff", "z2")
    assert out["dimension"] == 1
    with pytest.raises(qw.DomainError):
        qw.run_json("classify", "--group", "nope")


def test_cli_binary_matches_module():
    exe = os.environ.get("QWP_CLI")
    if not exe:
        pytest.skip("QWP_CLI not set")
    proc = subprocess.run([exe, "--json", "table1", "--coeff", "z2"], capture_output=True, text=True, check=True)
    code, out, _ = qw.run(["--json", "table1", "--coeff", "z2"])
    assert code == 0
    assert proc.stdout == out
