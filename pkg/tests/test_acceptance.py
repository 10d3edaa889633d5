"""Acceptance criteria, one test each.

The terminal summary lists one PASS/FAIL line per criterion.  Run just
these with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
Tolerances are pinned below; equality checks are exact.
"""

import io
import statistics
import sys
import time
from collections import Counter

import pytest

from treeq import (
    ALPHA,
    EPSILON,
    TRUE,
    And,
    DefIntoPath,
    GroupSpec,
    KeepPath,
    LookupSpec,
    Not,
    Or,
    Path,
    PathEqPath,
    PathRef,
    apply_path,
    concat,
    group_stage,
    group_subset,
    lookup_stage,
    match_stage,
    parse_pipeline,
    project_stage,
    satisfies,
    unwind_stage,
)
from treeq.cli import main
from treeq.codec import decode_json, encode_json
from treeq.testing import (
    SLEEP_QUERY,
    TEMPS_QUERY,
    GenConfig,
    Generator,
    fixture_path,
    fixtures,
    oracle_group,
    oracle_lookup,
    oracle_match,
    oracle_project,
    oracle_unwind,
)

import expected as E

PATH_LIMIT_S = 1e-3
CLI_LIMIT_S = 1.0
LAW_LIMIT_S = 30.0
DIFF_LIMIT_S = 60.0
INSTANCES = 500
SEED = 2018

DATES = parse_pipeline(TEMPS_QUERY).stages[0].criterion
RESHAPE = parse_pipeline(SLEEP_QUERY).stages[1].items
WINDOW = parse_pipeline(SLEEP_QUERY).stages[2].criterion
GROUPING = parse_pipeline(SLEEP_QUERY).stages[3].spec


def note(request, text):
    request.node.user_properties.append(("detail", text))


@pytest.mark.acceptance(1, "path application on the two-level tree")
def test_path_application(request):
    assert apply_path(E.NESTED, Path("x")) == E.NESTED_X
    assert apply_path(E.NESTED, Path("x.z")) == E.NESTED_XZ
    timings = []
    for _ in range(50):
        start = time.perf_counter()
        apply_path(E.NESTED, Path("x"))
        apply_path(E.NESTED, Path("x.z"))
        timings.append(time.perf_counter() - start)
    median = statistics.median(timings)
    note(request, f"median {median * 1e3:.4f} ms for both paths, limit {PATH_LIMIT_S * 1e3:g} ms")
    assert median < PATH_LIMIT_S


@pytest.mark.acceptance(2, "match on the three-day window")
def test_match_window(request):
    bio = fixtures()["biometric"]
    out = match_stage(bio, DATES)
    assert out == bio[:3]
    assert tuple(t.get("date") for t in out) == E.MATCHED_DATES
    note(request, f"{len(out)} of {len(bio)} days kept, input order")


@pytest.mark.acceptance(3, "unwind sessions along M.D.L")
def test_unwind_sessions(request):
    sleep = fixtures()["sleeplog"]
    out = unwind_stage(sleep, "M.D.L")
    sessions = sum(len(apply_path(t, Path("M.D.L"))) for t in sleep)
    assert len(out) == sessions == len(E.SESSIONS)
    for t in out:
        (month,) = t.get("M")
        (day,) = month.get("D")
        assert len(day.get("L")) == 1
    # the reference pair appears back to back, in order
    i = out.index(E.UNWOUND_PAIR[0])
    assert out[i + 1] == E.UNWOUND_PAIR[1]
    note(request, f"{len(out)} session trees; reference pair at positions {i + 1}-{i + 2}")


@pytest.mark.acceptance(4, "temperature and sleep-record projections")
def test_projections(request):
    bio = fixtures()["biometric"]
    temps = parse_pipeline(TEMPS_QUERY).stages[1].items
    assert project_stage(match_stage(bio, DATES), temps) == E.TEMPS
    unwound = unwind_stage(fixtures()["sleeplog"], "M.D.L")
    assert project_stage(unwound, RESHAPE) == E.RESHAPED
    note(request, f"{len(E.TEMPS)} temperature trees, {len(E.RESHAPED)} sleep records")


@pytest.mark.acceptance(5, "group quality by day, month, year")
def test_group(request):
    filtered = match_stage(project_stage(unwind_stage(fixtures()["sleeplog"], "M.D.L"), RESHAPE), WINDOW)
    assert filtered == E.FILTERED
    out = group_stage(filtered, GROUPING)
    assert out == E.GROUPS
    assert group_subset(filtered, GROUPING, []) == ()
    qualities = Counter(q.root for q in out[0].get("quality"))
    assert qualities["good"] == 2
    note(request, "2 groups; empty subset gives []; repeated 'good' kept")


@pytest.mark.acceptance(6, "lookup attaches the temperatures")
def test_lookup(request):
    grouped = project_stage(E.GROUPS, parse_pipeline(SLEEP_QUERY).stages[4].items)
    out = lookup_stage(grouped, LookupSpec("patient_id", "temps", "patient_id", "temps"), E.TEMPS)
    assert out == E.JOINED
    assert all(t.get("temps") == E.TEMPS for t in out)
    note(request, "both trees carry all 3 temperature trees")


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(""), stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return out.getvalue()


@pytest.mark.acceptance(7, "sample queries end to end through the command line")
def test_cli_end_to_end(request, tmp_path):
    temps_file = tmp_path / "temps.json"
    sleep_query = tmp_path / "sleep.tq"
    sleep_query.write_text(SLEEP_QUERY)
    start = time.perf_counter()
    temps_text = _cli(["run", "--query", TEMPS_QUERY, "--input", str(fixture_path("biometric"))])
    temps_file.write_text(temps_text)
    joined_text = _cli(
        ["run", "--query", f"@{sleep_query}", "--input", str(fixture_path("sleeplog")), "--bind", f"temps={temps_file}"]
    )
    elapsed = time.perf_counter() - start
    assert temps_text == encode_json(E.TEMPS) + "\n"
    assert joined_text == encode_json(E.JOINED) + "\n"
    assert decode_json(joined_text) == E.JOINED
    note(request, f"{elapsed:.3f} s for two invocations, limit {CLI_LIMIT_S:g} s")
    assert elapsed < CLI_LIMIT_S


def _concat_forms(a):
    return [
        (concat(ALPHA, ALPHA), ALPHA),
        (concat(ALPHA, ()), ()),
        (concat((), ALPHA), ()),
        (concat((), ()), ()),
        (concat(ALPHA, a), a),
        (concat(a, ALPHA), a),
        (concat((), a), a),
        (concat(a, ()), a),
    ]


def _same(x, y):
    return x is y if ALPHA in (x, y) else x == y


@pytest.mark.acceptance(8, "algebraic laws over seeded random instances")
def test_laws(request):
    g = Generator(GenConfig(seed=SEED))
    start = time.perf_counter()
    checked = Counter()
    for _ in range(INSTANCES):
        a, b = g.array(), g.array()
        phi, psi = g.criterion(), g.criterion()
        p, q = g.path(1), g.path(1)

        assert all(_same(x, y) for x, y in _concat_forms(a))
        checked["concat"] += 1

        once = match_stage(a, phi)
        assert match_stage(once, phi) == once
        checked["match idempotent"] += 1
        assert match_stage(a, TRUE) == a
        checked["match true"] += 1

        assert unwind_stage(a, EPSILON) == a
        checked["unwind ε"] += 1
        assert project_stage(a, [KeepPath(EPSILON)]) == a
        checked["project ε"] += 1

        spec = g.group_spec()
        bare = GroupSpec([s for s, _ in spec.aggregations], [s for s, _ in spec.groupings])
        spelled = GroupSpec([(s, s) for s, _ in spec.aggregations], [(s, s) for s, _ in spec.groupings])
        assert group_stage(b, bare) == group_stage(b, spelled)
        checked["group sugar"] += 1

        for t in a + b:
            assert satisfies(t, PathEqPath(p, q)) == satisfies(t, PathEqPath(q, p))
            assert satisfies(t, Not(And(phi, psi))) == satisfies(t, Or(Not(phi), Not(psi)))
            assert satisfies(t, Not(Or(phi, psi))) == satisfies(t, And(Not(phi), Not(psi)))
        checked["symmetry and De Morgan"] += 1
    elapsed = time.perf_counter() - start
    assert set(checked.values()) == {INSTANCES}
    note(request, f"{len(checked)} law families x {INSTANCES} instances in {elapsed:.2f} s, limit {LAW_LIMIT_S:g} s")
    assert elapsed < LAW_LIMIT_S


def _multiset(a):
    return Counter(repr(t) for t in a)


@pytest.mark.acceptance(9, "every stage agrees with its reference oracle")
def test_differential(request):
    g = Generator(GenConfig(seed=SEED + 1))
    start = time.perf_counter()
    for _ in range(INSTANCES):
        a, phi = g.array(), g.criterion()
        assert match_stage(a, phi) == oracle_match(a, phi)
        p = g.path()
        assert unwind_stage(a, p) == oracle_unwind(a, p)
        items = g.projection()
        assert project_stage(a, items) == oracle_project(a, items)
        spec = g.group_spec()
        assert _multiset(group_stage(a, spec)) == _multiset(oracle_group(a, spec))
        adj, lspec = g.array(), g.lookup_spec()
        assert lookup_stage(a, lspec, adj) == oracle_lookup(a, lspec, adj)
    elapsed = time.perf_counter() - start
    note(request, f"5 stages x {INSTANCES} instances in {elapsed:.2f} s, limit {DIFF_LIMIT_S:g} s")
    assert elapsed < DIFF_LIMIT_S


@pytest.mark.acceptance(10, "JSON round trip and compact/canonical agreement")
def test_codec_round_trip(request):
    g = Generator(GenConfig(seed=SEED + 2))
    for _ in range(INSTANCES):
        a = g.array()
        canonical = encode_json(a)
        assert decode_json(canonical) == a
        assert decode_json(encode_json(a, compact=True)) == decode_json(canonical)
    note(request, f"{INSTANCES} arrays")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
