"""
The query language
==================
"""

from treeq import ParseError, format_pipeline, parse_pipeline
from treeq.testing import fixtures

query = """
// readings for two days, temperatures only
match { date == 20181129 || date == 20181130 }
|> project { t in temps, (exists hr) in has_hr, [date, "checked"] in tags }
"""
pl = parse_pipeline(query)
print(pl.stages)

for t in pl.run(fixtures()["biometric"]):
    print(t)

# the printer gives back text that parses to the same pipeline
text = format_pipeline(pl)
print(text)
print(parse_pipeline(text) == pl)

# labels that are not plain identifiers go in backticks
print(format_pipeline(parse_pipeline("project { `my key`.x in `group` }")))

# errors point at line and column
try:
    parse_pipeline("match { date == }")
except ParseError as err:
    print(err)
