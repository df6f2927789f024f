"""End-to-end checks of nsvtool: exit codes, report schema, determinism."""
import json
import os
import subprocess
import sys

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
schema = json.load(open(schema_path))
failures = []


def run(args, env=None):
    e = dict(os.environ)
    e.pop("NSV_PRECISION", None)
    e.update(env or {})
    p = subprocess.run([tool, "--json", "-", *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout


def check(cond, what):
    if not cond:
        failures.append(what)
    print(("ok   " if cond else "FAIL ") + what)


cases = [
    (["kac", "--r", "2", "--s", "2"], 0, "computed"),
    (["kac", "--r", "2", "--s", "1"], 2, "invalid"),
    (["singvec", "--r", "2", "--s", "2"], 0, "pass"),
    (["reducibility", "--bound", "4"], 0, "pass"),
    (["zhu", "--r", "3", "--s", "1"], 0, "pass"),
    (["fuse", "--ctx", "generic", "--a", "S(2,2)", "--b", "S(2,2)"], 0, "computed"),
    (["fuse", "--ctx", "c32", "--a", "S(2,2)", "--b", "S(1,1)"], 2, "invalid"),
    (["muger", "--label", "S(1,1)"], 0, "computed"),
    (["char", "--which", "so3", "--order", "10"], 0, "pass"),
    (["coset", "--check", "search", "--cutoff", "2"], 0, "pass"),
    (["blocks", "--check", "rigidity", "--t", "-3/5"], 0, "pass"),
    (["blocks", "--check", "rigidity", "--t", "2/5"], 2, "invalid"),
    (["blocks", "--check", "rigidity", "--t", "2/5", "--allow-minimal"], 0, "pass"),
    (["blocks", "--check", "dimension", "--t", "1/0"], 2, "invalid"),
    (["blocks", "--check", "vv"], 0, "pass"),
]
for args, code, status in cases:
    rc, out = run(args)
    label = " ".join(args)
    check(rc == code, f"exit {code}: {label} (got {rc})")
    try:
        doc = json.loads(out)
        jsonschema.validate(doc, schema)
        check(doc["status"] == status, f"status {status}: {label}")
    except Exception as ex:  # noqa: BLE001
        check(False, f"valid report: {label}: {ex}")

# the singular vector payload is the three-term vector
rc, out = run(["singvec", "--r", "2", "--s", "2"])
terms = {t["monomial"]: t["coefficient"] for t in json.loads(out)["payload"]["terms"]}
check(terms == {"G(-3/2) G(-1/2)": "-1", "L(-1)^2": "1", "L(-2)": "(-1/2*t^2+t-1/2)/t"}, "singvec (2,2) terms")

# S(2,2) x S(2,2): four summands with parities
rc, out = run(["fuse", "--ctx", "generic", "--a", "S(2,2)", "--b", "S(2,2)"])
got = sorted((s["r"], s["s"], s["parity"]) for s in json.loads(out)["payload"]["summands"])
check(got == [(1, 1, 0), (1, 3, 1), (3, 1, 1), (3, 3, 0)], "S(2,2) x S(2,2) summands")

# determinism with the run block removed
args = ["--no-run-info", "blocks", "--check", "dimension", "--t", "-7/3"]
a, b = run(args)[1], run(args)[1]
check(a == b and "run" not in json.loads(a), "byte-identical reports without run info")

# precision: environment default, flag overrides
_, out = run(["blocks", "--check", "rigidity", "--t", "7"], {"NSV_PRECISION": "128"})
check(json.loads(out)["parameters"]["--prec"] == "128", "NSV_PRECISION sets the default")
_, out = run(["blocks", "--check", "rigidity", "--t", "7", "--prec", "320"], {"NSV_PRECISION": "128"})
check(json.loads(out)["parameters"]["--prec"] == "320", "--prec overrides NSV_PRECISION")
rc, _ = run(["kac", "--r", "1", "--s", "1"], {"NSV_PRECISION": "abc"})
check(rc == 2, "malformed NSV_PRECISION is invalid input")

# unknown subcommand and bad choices
rc, _ = run(["bogus"])
check(rc == 2, "unknown subcommand exits 2")
rc, _ = run(["coset", "--check", "l0", "--t", "2", "--sqrt-branch", "x"])
check(rc == 2, "bad --sqrt-branch exits 2")

# branch choice flips the sign of odd entries
_, p = run(["coset", "--check", "l0", "--t", "4/9", "--sqrt-branch", "+"])
_, m = run(["coset", "--check", "l0", "--t", "4/9", "--sqrt-branch", "-"])
ep = json.loads(p)["payload"]["La0"][0][1]["at_t"]
em = json.loads(m)["payload"]["La0"][0][1]["at_t"]
check(ep == "6/13*i" and em == "-6/13*i", "sqrt branch selects s")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
