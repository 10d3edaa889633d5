"""
Running queries from the shell
==============================

Equivalent to:

    treeq run --query @temps.tq --input biometric.json --output temps.json
    treeq run --query @sleep.tq --input sleeplog.json --bind temps=temps.json --compact
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from treeq.testing import SLEEP_QUERY, TEMPS_QUERY, fixture_path

work = Path(tempfile.mkdtemp())
(work / "temps.tq").write_text(TEMPS_QUERY)
(work / "sleep.tq").write_text(SLEEP_QUERY)


def treeq(*args):
    proc = subprocess.run([sys.executable, "-m", "treeq", *args], capture_output=True, text=True)
    print("exit", proc.returncode, proc.stderr.strip())
    return proc.stdout


treeq("run", "--query", f"@{work / 'temps.tq'}", "--input", str(fixture_path("biometric")), "--output", str(work / "temps.json"))
print(treeq("run", "--query", f"@{work / 'sleep.tq'}", "--input", str(fixture_path("sleeplog")),
            "--bind", f"temps={work / 'temps.json'}", "--compact"))

# a syntax error exits with 1, a missing dataset with 3
treeq("run", "--query", "match {", "--input", str(fixture_path("biometric")))
treeq("run", "--query", "lookup { a == nowhere.a in b }", "--input", str(fixture_path("biometric")))
