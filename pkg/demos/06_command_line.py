"""
Command line walkthrough
========================

Every operation is available through the ``simplexorder`` command, which
reads JSON simplex specs and writes JSON results.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "simplexorder", *args], input=stdin,
                          capture_output=True, text=True, check=False)
    print("$ simplexorder", " ".join(args), f"  (exit {proc.returncode})")
    print(proc.stdout or proc.stderr)
    return proc


tmp = Path(tempfile.mkdtemp())
orthant = tmp / "orthant.json"
orthant.write_text(json.dumps({"geometry": "spherical", "label": "orthant",
                               "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))

run("classify", str(orthant))
run("angles", str(orthant))
proc = run("construct", "m1", str(orthant))

# specs can also come from stdin
gram = json.dumps({"gram": [[1, -0.5, -0.5], [-0.5, 1, -0.5], [-0.5, -0.5, 1]]})
run("construct", "m3", "-", "--t", "0.2", stdin=gram)

# a degenerate input is rejected with a field path and exit code 1
bad = json.dumps({"geometry": "spherical", "vertices": [[1, 0, 0], [0, 1, 0], [0.6, 0.8, 0]]})
run("classify", "-", stdin=bad)

# the verification report is deterministic for a given seed
run("verify", "--trials", "3", "--dims", "2..3", "--seed", "42")
