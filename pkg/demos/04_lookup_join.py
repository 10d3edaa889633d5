"""
Joining two datasets
====================
"""

from treeq import LookupSpec, lookup_stage, parse_array, parse_pipeline
from treeq.testing import SLEEP_QUERY, TEMPS_QUERY, fixtures

data = fixtures()

temps = parse_pipeline(TEMPS_QUERY).run(data["biometric"])

# lookup attaches, under "temps", every adjunct tree with the same patient_id
nights = parse_array('[υ{quality:["good"{}], patient_id:["xxx"{}]}, υ{quality:["poor"{}], patient_id:["yyy"{}]}]')
spec = LookupSpec(source="patient_id", adjunct="temps", target="patient_id", dest="temps")
for t in lookup_stage(nights, spec, temps):
    print(t)

# in a pipeline the adjunct is looked up by name among the bound datasets
print(SLEEP_QUERY)
for t in parse_pipeline(SLEEP_QUERY).bind(temps=temps).run(data["sleeplog"]):
    print(t)
