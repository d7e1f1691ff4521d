# Copyright 2026 The mlsmells Authors.
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
"""Runs the CLI on the bundled fixture and validates every JSON output.

usage: validate_outputs.py <mlsmells binary> <fixture dir> <schema dir>
"""

import csv
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

import jsonschema


def run(*args, **kwargs):
    subprocess.run(args, check=True, stdout=subprocess.DEVNULL, **kwargs)


def main():
    binary, fixture, schemas = map(pathlib.Path, sys.argv[1:4])
    validators = {}
    for name in ("report", "traces", "analysis"):
        schema = json.loads((schemas / f"{name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        validators[name] = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        root = pathlib.Path(tmp)
        shutil.copy(fixture / "manifest.csv", root)
        shutil.copy(fixture / "catalog.csv", root)
        with open(root / "manifest.csv", newline="") as f:
            for row in csv.DictReader(f):
                repo = root / row["path"]
                repo.mkdir(parents=True)
                run("git", "init", "--quiet", str(repo))
                run("git", "-C", str(repo), "symbolic-ref", "HEAD",
                    "refs/heads/main")
                with open(fixture / f"{row['name']}.fi", "rb") as stream:
                    run("git", "-C", str(repo), "fast-import", "--quiet",
                        stdin=stream)
        art, out = root / "artifacts", root / "results"
        run(binary, "lifecycle", "--manifest", root / "manifest.csv",
            "-o", art, stderr=subprocess.DEVNULL)
        run(binary, "analyze", art, root / "catalog.csv", "-o", out)
        run(binary, "detect", fixture.parent / "listing1", "-o", root / "d")

        checked = 0
        errors = []
        targets = [("analysis", out / "analysis.json"),
                   ("report", root / "d" / "report.json")]
        for project in sorted(art.iterdir()):
            targets.append(("report", project / "report.json"))
            targets.append(("traces", project / "traces.json"))
        for name, path in targets:
            doc = json.loads(path.read_text())
            for e in validators[name].iter_errors(doc):
                errors.append(f"{path.relative_to(root)}: {e.message}")
            checked += 1
        for e in errors:
            print(e)
        print(f"{checked} documents checked, {len(errors)} schema errors")
        return 1 if errors or checked < 4 else 0


if __name__ == "__main__":
    sys.exit(main())
