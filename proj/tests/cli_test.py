"""End-to-end checks of the chillag binary: exit codes, JSON schema, stability.

usage: cli_test.py <chillag> <fixture-dir> <schema.json>
"""

import json
import os
import subprocess
import sys

import jsonschema
import jsonschema.exceptions

CHILLAG, FIXTURES, SCHEMA_PATH = sys.argv[1:4]
with open(SCHEMA_PATH) as f:
    SCHEMA = json.load(f)
jsonschema.Draft202012Validator.check_schema(SCHEMA)
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)

failures = []


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("CHILLAG_CAP", None)
    full_env.update(env or {})
    p = subprocess.run([CHILLAG, *args], capture_output=True, text=True, env=full_env, timeout=300)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    if not cond:
        failures.append(what)
    print(("ok   " if cond else "FAIL ") + what)


def verdicts(node, path="$"):
    """Yields (path, value) for every key named verdict-like."""
    if isinstance(node, dict):
        for k, v in node.items():
            if k in ("verdict", "exact_verification", "trace_identity", "column_integrality", "orthogonality",
                     "preimage_crosscheck", "galois_action_on_ipi", "constituent", "within_bound"):
                yield f"{path}.{k}", v
            yield from verdicts(v, f"{path}.{k}")
    elif isinstance(node, list):
        for i, v in enumerate(node):
            yield from verdicts(v, f"{path}[{i}]")


def json_case(args, code, name, env=None):
    rc, out, err = run(*args, "--json", env=env)
    check(rc == code, f"{name}: exit {rc} (expected {code}) {err.strip()}")
    try:
        doc = json.loads(out)
    except json.JSONDecodeError as e:
        check(False, f"{name}: output is not JSON ({e})")
        return None
    err = jsonschema.exceptions.best_match(VALIDATOR.iter_errors(doc))
    check(err is None, f"{name}: schema" + (f" ({err.message[:200]} at {list(err.absolute_path)})" if err else ""))
    bad = [(p, v) for p, v in verdicts(doc) if v not in ("pass", "fail", "n/a")]
    check(not bad, f"{name}: tri-state verdicts {bad[:3]}")
    return doc


fx = lambda name: os.path.join(FIXTURES, name)

doc = json_case(["analyze", "S3", "--pi", "3"], 0, "analyze S3 --pi 3")
if doc:
    r = doc["reports"][0]
    check((r["ordinary"]["s"], r["pi"]["ipi"]["s"], r["pi"]["pim"]["s"]) == ("5", "3", "5"), "S3 pi={3}: s values 5, 3, 5")
    check(r["pi"]["decomposition"] == [[1, 0], [1, 0], [0, 1]], "S3 pi={3}: decomposition matrix")

doc = json_case(["analyze", "C1"], 0, "analyze C1")
if doc:
    check(doc["reports"][0]["ordinary"]["rows"] == [["1"]], "C1: table [[1]]")
    check(doc["reports"][0]["pi"]["status"] == "n/a", "C1: pi section n/a")

doc = json_case(["analyze", "A5", "--pi", "2"], 3, "analyze A5 --pi 2")
if doc:
    r = doc["reports"][0]
    check("ordinary" in r and r["ordinary"]["s"] == "19", "A5: ordinary section emitted")
    check(r["pi"]["error"]["kind"] == "NotPiSeparable", "A5: NotPiSeparable")

doc = json_case(["analyze", "S4", "A4", "SL(2,3)", "--p", "2", "--jobs", "2"], 0, "analyze --p 2 --jobs 2")
if doc:
    check([r["group"]["name"] for r in doc["reports"]] == ["S4", "A4", "SL(2,3)"], "report order follows input")

json_case(["analyze", "S5", "--pi", "2,3,5"], 0, "analyze S5 all primes")
json_case(["analyze", "PSL(2,7)", "--p", "7"], 3, "analyze PSL(2,7) --p 7")
json_case(["analyze", "Foo"], 3, "analyze unknown group")
json_case(["analyze", "S3", "--pi", "x"], 3, "bad prime list")
json_case(["analyze", "(1,2,3),(1,2)", "--pi", "2"], 0, "generator list input")
json_case(["analyze", "S5"], 3, "cap exceeded", env={"CHILLAG_CAP": "100"})
json_case(["crosscheck", "S3"], 0, "crosscheck S3")
json_case(["crosscheck", "Q8"], 0, "crosscheck Q8")
json_case(["crosscheck", "C1"], 0, "crosscheck C1")
json_case(["catalog"], 0, "catalog")
json_case(["ingest", fx("s3_ordinary.tbl")], 0, "ingest S3")
json_case(["columns", fx("missing.tbl")], 3, "columns missing file")

doc = json_case(["columns", fx("s3_ordinary.tbl")], 0, "columns S3")
if doc:
    check([c["value"] for c in doc["columns"]["column_sums"]] == ["4", "0", "1"], "S3 column sums (4,0,1)")
doc = json_case(["columns", fx("c5_ordinary.tbl")], 0, "columns C5")
if doc:
    check([c["value"] for c in doc["columns"]["column_sums"]] == ["5", "0", "0", "0", "0"], "C5 column sums")

for name in ("psl2_16_mod2.tbl", "psl2_27_mod3.tbl", "sz32_mod2.tbl", "psl2_16_mod2_pim.tbl"):
    doc = json_case(["columns", fx(name)], 0, f"columns {name}")
    if doc:
        kinds = [c["rationality"] for c in doc["columns"]["column_sums"]]
        check("Irrational" in kinds, f"{name}: at least one Irrational column")
        check(doc["columns"]["galois"]["witness"] is not None, f"{name}: Galois witness")
    json_case(["ingest", fx(name)], 0, f"ingest {name}")

# truncated copy of a fixture
import tempfile

with open(fx("s3_ordinary.tbl")) as f:
    text = f.read()
with tempfile.NamedTemporaryFile("w", suffix=".tbl", delete=False) as tmp:
    tmp.write(text[: text.rindex("2,0,-1")])
rc, out, err = run("ingest", tmp.name)
os.unlink(tmp.name)
check(rc == 3 and "ParseError" in err and "unexpected end of input" in err, "truncated file: ParseError, exit 3")

# byte stability and text output
a = run("analyze", "S4", "--p", "3", "--json")
b = run("analyze", "S4", "--p", "3", "--json")
check(a == b, "byte-stable JSON")
rc, out, _ = run("analyze", "S3", "--pi", "3")
check(rc == 0 and "pi = {3}" in out and "bound certificate" in out, "text report")
rc, out, _ = run("--help")
check(rc == 0 and "analyze" in out, "--help")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
