"""Smoke test for the `ebbi` extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import math
import os
import subprocess
import sys
import tempfile

import ebbi


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    r = ebbi.ebbi_check(1.0, -1.0, -1.0, -1.0)
    assert not r["all_satisfied"]
    assert any(c["description"] == "|E12 + E13| <= E0 + E23" and not c["satisfied"] for c in r["clauses"])

    assert ebbi.expand2([0.0, 1.0, 0.0, 0.0]) == [1.0, 1.0, -1.0, -1.0]
    assert ebbi.expand3([1.0] + [0.0] * 7) == [1.0] * 8
    assert ebbi.construct_g3(1, 1, 1, 1) == [0.5, 0, 0, 0, 0, 0, 0, 0.5]

    e = [ebbi.singlet_correlation([0, 0, 1], [math.sin(t), 0, math.cos(t)]) for t in (0, math.pi / 3)]
    assert close(e[0], -1.0) and close(e[1], -0.5)

    rep = ebbi.check_boole_triple(-0.5, 0.5, -0.5, hypothesis="anti")
    assert not rep["all_satisfied"]
    assert ebbi.check_boole_triple(-0.5, 0.5, -0.5)["all_satisfied"]

    flat = [0.25] * 4
    assert ebbi.marginals_compatible(flat, flat, flat)["compatible"]
    assert ebbi.reconstruct_f3(flat, flat, flat)["table"] == {k: 0.125 for k in ebbi_keys()}
    bad = ebbi.synth2([1.0, 0.0, 0.0, -1.0])
    try:
        ebbi.reconstruct_f3(bad, bad, bad)
        raise AssertionError("expected refusal")
    except ValueError:
        pass

    lg = ebbi.leggett_garg(1.0, [0.0, math.pi / 3, math.pi / 3])
    assert lg["triple_report"]["all_satisfied"] and not lg["pair_report"]["all_satisfied"]
    d = ebbi.leggett_garg_sample(1.0, [0.1, 0.2, 0.3], 20000, 7)
    assert d.n == 3 and len(d) == 20000
    assert abs(d.correlation(1, 2) - lg_e12(1.0, 0.2)) < 0.05

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "d.csv")
        ds = ebbi.Dataset([[1, -1, 1], [-1, -1, 1]])
        ds.write_csv(path)
        back = ebbi.Dataset.read_csv(path)
        assert back.rows() == ds.rows()
        assert back.check()["family"] == "boole_triple"

    sampled, exact = ebbi.factorizable("opposite", 0.0, 1.0, 200000, 3)
    assert abs(sampled - exact) < 0.01

    assert ebbi.allergy(10) == (-1.0, -3.0)

    p = ebbi.epr_pipeline("singlet", [0.0, math.pi / 3, 2 * math.pi / 3], 30000, 1)
    assert p["verdict"] == "triples hypothesis rejected"
    assert p["pair_bound"]["all_satisfied"]
    t = ebbi.epr_pipeline("triple", [0.0, 1.0, 2.0], 3000, 2, window=0.2, jitter=0.5)
    assert t["boole_triple"]["all_satisfied"]

    validate_cli_schema()
    print("smoke test ok")


def ebbi_keys():
    return ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"]


def lg_e12(omega, dt2):
    return math.cos(2 * omega * dt2)


def validate_cli_schema():
    """Validate one CLI report against the shipped schema when both exist."""
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    exe = os.path.join(root, "target", "release", "ebbi")
    try:
        import json

        import jsonschema
    except ImportError:
        return
    if not os.path.exists(exe):
        return
    with open(os.path.join(root, "schema", "report.schema.json")) as f:
        schema = json.load(f)
    out = subprocess.run([exe, "ebbi", "check", "--e", "1", "-1", "-1", "-1"], check=True, capture_output=True)
    jsonschema.validate(json.loads(out.stdout), schema)


if __name__ == "__main__":
    sys.exit(main())
