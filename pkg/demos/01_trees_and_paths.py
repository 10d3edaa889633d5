"""
Trees, arrays and paths
=======================

Every value is a tree: a root scalar plus labeled arrays of subtrees.
"""

from treeq import ALPHA, NULL, Path, Tree, apply_path, concat, parse_tree, set_cast

# trees can be written in the usual notation, υ marks "no root value"
t = parse_tree("υ{x:[υ{z:[1{},2{}], y:[3{}]}]}")
print(t)

# or built directly
same = Tree(NULL, {"x": t.get("x")})
print(same == t)

# a path collects every subtree it reaches, ignoring positions
print(apply_path(t, Path("x")))
print(apply_path(t, Path("x.z")))

# a label that is not there gives the null array, which is not the empty array
print(apply_path(t, Path("x.w")) is ALPHA)
print(apply_path(parse_tree("υ{x:[]}"), Path("x.w")))

# concatenation drops the null array as soon as a real one is present
print(concat(ALPHA, ALPHA), concat(ALPHA, ()), concat((t,), ALPHA))

# branch order does not matter for equality, element order does
print(parse_tree("υ{a:[1{}], b:[2{}]}") == parse_tree("υ{b:[2{}], a:[1{}]}"))
print(parse_tree("υ{a:[1{}, 2{}]}") == parse_tree("υ{a:[2{}, 1{}]}"))

# set cast keeps the first copy of each distinct tree
print(set_cast((t, parse_tree("1{}"), t)))
