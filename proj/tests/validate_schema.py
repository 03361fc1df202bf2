# Copyright 2026 The twostate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates every CLI document against the published result schema."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["hardy-table"],
    ["hardy-table", "--pre", "0.5,0.5,0.5,0:0.5", "--post", "0.5,-0.5,-0.5,0.5"],
    ["detector-stats", "--timing"],
    ["abl"],
    ["weak-measure", "--seed", "1", "--trials", "3000"],
    ["weak-measure", "--seed", "1", "--trials", "3000", "--observable", "N_pair_NO_NO", "--pdf-grid", "21"],
    ["simultaneous"],
    ["simultaneous", "--g", "2"],
    ["collective"],
    ["collective", "--n-pairs", "400", "--c", "2", "--pdf-grid", "33"],
    ["verify"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        status = "FAIL" if errors else "ok"
        print(f"{status} {' '.join(args)}")
        for e in errors:
            print(f"    {e.json_path}: {e.message}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
