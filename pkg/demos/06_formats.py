"""
JSON and XML
============
"""

from treeq import COMPACT_JSON, JSON, XML, decode, encode, parse_pipeline

doc = '[{"name": "ada", "langs": ["en", "fr"], "#": 1}, {"name": "bo", "langs": []}]'
people = decode(doc, JSON)
for p in people:
    print(p)

# canonical output writes every field as a list, so nothing is lost
print(encode(people, JSON))
print(encode(people, COMPACT_JSON))

# the same query works whatever the input format was
xml = "<people><p><name>ada</name><age>36</age></p><p><name>bo</name><age>41</age></p></people>"
(root,) = decode(xml, XML)
print(root)
older = parse_pipeline("unwind { p } |> match { p.age == 41 } |> project { p.name in name }").run((root,))
print(older)
print(encode(older, XML))
