"""
Filtering and reshaping daily readings
======================================
"""

from treeq import (
    DefIntoPath,
    Exists,
    KeepPath,
    PathEqArray,
    PathRef,
    ScalarLit,
    Ternary,
    match_stage,
    parse_array,
    project_stage,
)
from treeq.testing import fixtures

days = fixtures()["biometric"]
for day in days:
    print(day)

# keep three consecutive days; order is preserved
window = (
    PathEqArray("date", parse_array("[20181128{}]"))
    | PathEqArray("date", parse_array("[20181129{}]"))
    | PathEqArray("date", parse_array("[20181130{}]"))
)
kept = match_stage(days, window)
print(len(days), "->", len(kept))

# rename t to temperatures and stamp a constant identifier
temps = project_stage(kept, [DefIntoPath(PathRef("t"), "temperatures"), DefIntoPath(ScalarLit("xxx"), "patient_id")])
for t in temps:
    print(t)

# keep a path as is, and compute a flag with a conditional
fever = PathEqArray("t", parse_array("[37{}, 35{}, 35{}]"))
flagged = project_stage(kept, [KeepPath("date"), DefIntoPath(Ternary(fever, ScalarLit("high"), ScalarLit("ok")), "status")])
for t in flagged:
    print(t)

# trees without the kept path vanish from the result
print(project_stage(parse_array("[υ{a:[1{}]}, υ{b:[2{}]}]"), [KeepPath("a")]))
print(match_stage(days, ~Exists("hr")))
