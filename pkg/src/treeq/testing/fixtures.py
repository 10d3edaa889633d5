"""Health-monitoring sample datasets and the queries run over them (see ``data/NOTES.md``)."""

from __future__ import annotations

from importlib import resources

from ..codec import decode_json

# The patient identifier is fixed to "xxx".
TEMPS_QUERY = """\
match { date == 20181128 || date == 20181129 || date == 20181130 }
|> project { t in temperatures, "xxx" in patient_id }
"""

SLEEP_QUERY = """\
unwind { M.D.L }
|> project { y in year, M.m in month, M.D.d in day, M.D.L.q in quality }
|> match { year == 2018 && month == 11 && ( day == 29 || day == 30 ) }
|> group { quality by day, month, year }
|> project { quality, "xxx" in patient_id }
|> lookup { patient_id == temps.patient_id in temps }
"""


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def fixture_path(name: str):
    """Filesystem path of a fixture file (for CLI tests)."""
    return resources.files(__package__).joinpath("data", f"{name}.json")


def fixtures() -> dict:
    """``{"biometric": ..., "sleeplog": ...}`` as arrays of trees."""
    return {name: decode_json(fixture_text(name)) for name in ("biometric", "sleeplog")}
