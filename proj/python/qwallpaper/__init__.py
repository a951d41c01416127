"""Projective wallpaper group classification (Python bindings to the C++ core)."""

import json

from ._core import (  # noqa: F401
    DomainError,
    InvariantViolation,
    cohomology,
    group_names,
    h2_z2_dimension,
    homology,
    irrep_dim,
    run,
)


def run_json(*args):
    """Run a subcommand with --json and return the parsed payload.

    Raises DomainError (exit 1) or RuntimeError (exit 2) with the tool's message.
    """
    code, out, err = run(["--json", *args])
    if code == 1:
        raise DomainError(err.strip())
    if code != 0:
        raise RuntimeError(err.strip())
    return json.loads(out)
