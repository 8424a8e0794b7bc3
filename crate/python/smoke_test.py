"""Smoke test for the rigcat extension module.

Build and install first, e.g. `pip install --no-build-isolation ./crates/python`,
then run `python python/smoke_test.py`.
"""

import json
import os

import rigcat

corpus = rigcat.corpus_dir()


def read(rel):
    with open(os.path.join(corpus, rel)) as f:
        return f.read()


terminal = read("categories/terminal.json")
arrow = read("categories/walking_arrow.json")
group = read("categories/two_element_group.json")

assert rigcat.validate_category(terminal) == (1, 1)
assert rigcat.validate_category(read("categories/idempotent.json")) == (1, 2)
assert rigcat.trace_classes(group) == [["id_o"], ["s"]]
assert rigcat.end_unit_count(terminal, 3) == 4
assert rigcat.end_unit_count(group, 2) == 6
assert rigcat.hom_from_unit_count(arrow, ["y"], ["x"], 0) == 1
assert rigcat.hom_from_unit_count(arrow, ["y"], [], 3) == 0
assert rigcat.vs_cob(2, 2)

try:
    rigcat.validate_category(json.dumps({"objects": ["x"], "morphisms": [], "identities": {}}))
except ValueError as e:
    assert "identity" in str(e), e
else:
    raise AssertionError("a category without identities was accepted")

status, out, err = rigcat.run_cli(["vs-cob", "--maxlen", "2", "--bound", "1", "--format", "records"])
assert status == 0 and out.startswith("# rigcat-report v1"), (status, out, err)
status, _, err = rigcat.run_cli(["no-such-command"])
assert status == 2 and err

passed, records = rigcat.acceptance()
assert passed, records
assert records == rigcat.acceptance()[1]

print("smoke test passed")
