"""End-to-end checks of the dmod command line: exit codes, JSON schema, determinism."""
import json
import os
import subprocess
import sys

import jsonschema

DMOD, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as fh:
    validator = jsonschema.Draft202012Validator(json.load(fh))
failures = []


def run(args, env=None):
    e = dict(os.environ)
    e.pop("DMOD_PREC", None)
    e.update(env or {})
    return subprocess.run([DMOD] + args, capture_output=True, text=True, env=e)


def expect(name, cond, extra=""):
    print(("PASS " if cond else "FAIL ") + name + (f"  {extra}" if extra and not cond else ""))
    if not cond:
        failures.append(name)


def json_case(name, args, code=0, env=None):
    p = run(args + ["--report", "json"], env)
    expect(f"{name}: exit {code}", p.returncode == code, p.stderr[-400:])
    try:
        doc = json.loads(p.stdout)
    except json.JSONDecodeError as err:
        expect(f"{name}: parses", False, str(err))
        return None
    errors = sorted(validator.iter_errors(doc), key=str)
    expect(f"{name}: schema", not errors, errors[0].message if errors else "")
    again = run(args + ["--report", "json"], env)
    expect(f"{name}: deterministic", again.stdout == p.stdout)
    expect(f"{name}: sorted keys", p.stdout.strip() == json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    return doc


doc = json_case("construct N=2", ["construct", "--q", "2", "--rho", "1,1,1"])
if doc:
    expect("construct N=2: routes agree", doc["routes_agree"] and doc["closed_form_match"] is True)
    expect("construct N=2: tau-degree 2", all(len(im) == 3 for im in doc["modules"][0]["images"]))
doc = json_case("construct N=3", ["construct", "--q", "2", "--rho", "1,1,0,1"])
if doc:
    expect("construct N=3: routes agree", doc["routes_agree"] and doc["closed_form_match"] is True)
doc = json_case("construct N=4", ["construct", "--q", "2", "--rho", "1,1,0,0,1"])
if doc:
    expect("construct N=4: no closed form", doc["closed_form_match"] is None and doc["pass"])

doc = json_case("verify agf trunc 4", ["verify", "--suite", "agf", "--trunc", "4"])
if doc:
    omega = [a for a in doc["suites"][0]["agf"] if a["which"] == "omega_f"][0]
    expect("verify agf trunc 4: omega_f at K=4", omega["K"] == 4 and omega["residue"]["matches_pi_phi"])
doc = json_case("verify period q=3", ["verify", "--suite", "period", "--q", "3", "--rho", "1,0,1"])
if doc:
    expect("verify period q=3: rows present", len(doc["suites"][0]["periods"]) > 0 and doc["pass"])
doc = json_case("verify custom samples", ["verify", "--suite", "agf", "--trunc", "3", "--samples", "eta^(1)-x^-2,x^-1"])
if doc:
    zs = {s["z"] for a in doc["suites"][0]["agf"] for s in a["samples"]}
    expect("verify custom samples: used", zs == {"eta^(1)-x^-2", "x^-1"}, str(zs))
doc = json_case("sample outside domain", ["verify", "--suite", "agf", "--trunc", "3", "--samples", "eta+x^2"], code=1)
if doc:
    rows = [s for a in doc["suites"][0]["agf"] for s in a["samples"]]
    expect("sample outside domain: flagged", all(not r["pass"] and r["check"].endswith(":outside_domain") for r in rows))
doc = json_case("DMOD_PREC", ["verify", "--suite", "period"], env={"DMOD_PREC": "48"})
if doc:
    expect("DMOD_PREC: honoured", doc["config"]["prec"] == 48)
doc = json_case("--prec overrides DMOD_PREC", ["verify", "--suite", "axioms", "--prec", "40"], env={"DMOD_PREC": "48"})
if doc:
    expect("--prec overrides DMOD_PREC: value", doc["config"]["prec"] == 40)

text = run(["verify", "--suite", "axioms"])
expect("text report", text.returncode == 0 and text.stdout.rstrip().splitlines()[-1].startswith("PASS"))

for name, args, env in [
    ("malformed rho", ["construct", "--rho", "1,x,1"], None),
    ("empty rho entry", ["construct", "--rho", "1,,1"], None),
    ("reducible rho", ["construct", "--rho", "1,0,1"], None),
    ("degree one rho", ["construct", "--rho", "1,1"], None),
    ("q not a prime power", ["construct", "--q", "6"], None),
    ("unknown suite", ["verify", "--suite", "nope"], None),
    ("bad report format", ["verify", "--report", "xml"], None),
    ("nonpositive trunc", ["verify", "--trunc", "0"], None),
    ("malformed sample", ["verify", "--suite", "agf", "--samples", "eta+y"], None),
    ("no subcommand", [], None),
    ("garbage DMOD_PREC", ["construct"], {"DMOD_PREC": "abc"}),
]:
    p = run(args, env)
    expect(f"usage error exits 2: {name}", p.returncode == 2, f"got {p.returncode}")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
