"""Validate API response samples against schemas/api.schema.json.

Each sample is named <Def>__<n>.json and is checked against $defs/<Def> with
the jsonschema reference implementation.
"""

import json
import pathlib
import sys

import jsonschema


def main(schema_path: str, samples_dir: str) -> int:
    bundle = json.loads(pathlib.Path(schema_path).read_text(encoding="utf-8"))
    jsonschema.Draft202012Validator.check_schema(bundle)
    samples = sorted(pathlib.Path(samples_dir).glob("*__*.json"))
    if not samples:
        print(f"no samples in {samples_dir}")
        return 1
    failed = 0
    for path in samples:
        def_name = path.name.split("__", 1)[0]
        if def_name not in bundle["$defs"]:
            print(f"FAIL {path.name}: unknown definition {def_name}")
            failed += 1
            continue
        schema = {"$schema": bundle["$schema"], "$defs": bundle["$defs"], "$ref": f"#/$defs/{def_name}"}
        validator = jsonschema.Draft202012Validator(schema)
        errors = sorted(validator.iter_errors(json.loads(path.read_text(encoding="utf-8"))), key=str)
        if errors:
            failed += 1
            print(f"FAIL {path.name}")
            for err in errors[:5]:
                print(f"    {'/'.join(map(str, err.absolute_path))}: {err.message}")
    print(f"{len(samples) - failed}/{len(samples)} samples valid")
    return 1 if failed else 0


if __name__ == "__main__":
    if len(sys.argv) != 3:
        print("usage: schema_check.py SCHEMA SAMPLES_DIR")
        sys.exit(2)
    sys.exit(main(sys.argv[1], sys.argv[2]))
