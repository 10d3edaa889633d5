"""
Sessions per night, then qualities per day
==========================================
"""

from treeq import DefIntoPath, GroupSpec, PathRef, group_stage, match_stage, parse_criterion, project_stage, unwind_stage
from treeq.testing import fixtures

log = fixtures()["sleeplog"]

# one tree per session, each carrying singleton M, D and L arrays
sessions = unwind_stage(log, "M.D.L")
print(len(sessions), "sessions")
print(sessions[1])

# flatten to one record per session
records = project_stage(
    sessions,
    [
        DefIntoPath(PathRef("y"), "year"),
        DefIntoPath(PathRef("M.m"), "month"),
        DefIntoPath(PathRef("M.D.d"), "day"),
        DefIntoPath(PathRef("M.D.L.q"), "quality"),
    ],
)
for r in records:
    print(r)

window = parse_criterion("year == 2018 && month == 11 && (day == 29 || day == 30)")
recent = match_stage(records, window)

# collect qualities for each (day, month, year); repeated values are kept
groups = group_stage(recent, GroupSpec(["quality"], ["day", "month", "year"]))
for g in groups:
    print(g)

# distinct=True collects each distinct tree's values once
print(group_stage(recent, GroupSpec(["quality"], ["day"]), distinct=True))

# destinations can be renamed
print(group_stage(recent, GroupSpec([("quality", "seen")], [("day", "night")])))
