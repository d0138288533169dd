#!/usr/bin/env python3
"""Golden-file, determinism and schema checks for seifert_cli."""

import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema

GOLDEN = [
    ("components_a1_g0_2_1.ndjson", ["components", "--group", "A1", "--seifert", "g=0; (2,1)"], 0),
    ("abelian_g0_2_1_3_1_5_1.ndjson", ["abelian", "--seifert", "g=0; (2,1),(3,1),(5,1)"], 0),
    ("components_not_coprime.ndjson", ["components", "--seifert", "g=0; (4,2)"], 2),
]

# (arguments, expected exit status) for the schema sweep
SWEEP = [
    (["components", "--group", "A2", "--seifert", "g=1; (3,1),(2,1)"], 0),
    (["prefactor", "--group", "C2", "--seifert", "g=0; (2,1),(3,1),(4,1)"], 0),
    (["prefactor", "--group", "G2", "--seifert", "g=1; (2,1)"], 0),
    (["volume", "--group", "A1", "--seifert", "g=2; (2,1)", "--truncation", "100000"], 0),
    (["volume", "--group", "A1", "--seifert", "g=0; (2,1),(3,1),(5,1)"], 3),
    (["volume", "--group", "A2", "--seifert", "g=1; (3,1)", "--truncation", "2000", "--scale", "2"], 3),
    (["abelian", "--seifert", "g=2; (2,1),(3,-2)"], 0),
    (["abelian", "--seifert", "g=0; (1,0)"], 2),
    (["check-torsion", "--count", "10"], 0),
    (["mv-verify", "--seifert", "g=1; (2,1),(3,-1)", "--count", "5"], 0),
    (["components", "--group", "Z9", "--seifert", "g=0; (2,1)"], 2),
    (["volume", "--seifert", "g=0; (2,1)", "--truncation", "0"], 2),
    (["nonsense"], 2),
]


def run(cli, args):
    proc = subprocess.run([cli, *args], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def check_golden(cli, golden_dir, regen):
    failures = 0
    for name, args, status in GOLDEN:
        first_status, first = run(cli, args)
        second_status, second = run(cli, args)
        path = golden_dir / name
        if regen:
            path.write_bytes(first)
        ok = first_status == status == second_status and first == second and path.read_bytes() == first
        print(f"{'PASS' if ok else 'FAIL'} golden {name} (exit {first_status})")
        failures += not ok
    return failures


def check_schema(cli, schema_path):
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, status in SWEEP + [(g[1], g[2]) for g in GOLDEN]:
        code, out = run(cli, args)
        lines = out.decode().splitlines()
        problems = [] if code == status else [f"exit {code}, expected {status}"]
        if not lines:
            problems.append("no records")
        for line in lines:
            for err in validator.iter_errors(json.loads(line)):
                problems.append(err.message)
        if status != 0 and not any("error" in json.loads(line) for line in lines):
            problems.append("no error record")
        print(f"{'PASS' if not problems else 'FAIL'} schema {' '.join(args)}")
        for p in problems:
            print(f"    {p}")
        failures += bool(problems)
    return failures


def check_csv(cli):
    args = ["prefactor", "--group", "A2", "--seifert", "g=1; (3,1)", "--format", "csv"]
    a, b = run(cli, args), run(cli, args)
    header = a[1].decode().splitlines()[0] if a[1] else ""
    ok = a == b and a[0] == 0 and header == "v,u,dim,occupancy,prefactor,exact_square"
    print(f"{'PASS' if ok else 'FAIL'} csv determinism and column order")
    return not ok


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("cli")
    parser.add_argument("--golden-dir", type=Path, required=True)
    parser.add_argument("--schema", required=True)
    parser.add_argument("--only", choices=["golden", "schema", "csv"])
    opts = parser.parse_args()
    regen = bool(os.environ.get("SEIFERT_REGEN_GOLDEN"))
    failures = 0
    if opts.only in (None, "golden"):
        failures += check_golden(opts.cli, opts.golden_dir, regen)
    if opts.only in (None, "schema"):
        failures += check_schema(opts.cli, opts.schema)
    if opts.only in (None, "csv"):
        failures += check_csv(opts.cli)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
