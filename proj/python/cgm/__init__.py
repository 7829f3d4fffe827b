"""Category-graded monads: law suites, graded programs and aHL derivations."""

from ._cgm import (
    CgmError,
    check_ahl,
    cli,
    format_program,
    instance_names,
    laws,
    roundtrip,
    run_program,
    translate,
)

__all__ = [
    "CgmError",
    "check_ahl",
    "cli",
    "format_program",
    "instance_names",
    "laws",
    "roundtrip",
    "run_program",
    "translate",
]
