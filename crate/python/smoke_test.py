"""Smoke test for the segrejet Python extension.

Build and install first, e.g. `maturin develop --release` in crates/py.
"""

import json

import segrejet


def main():
    s = segrejet.segre_cotangent(4, 2)
    assert len(s) == 3
    assert s[2].elementary_form() == [(2, 1), (1, -5), (0, 15)], s[2]
    assert s[2] == segrejet.segre_closed_form(4, 2, 2)

    diff, value = segrejet.morse_certificate(4, 2, 4, [34, 34])
    assert value == 15
    assert diff.eval([33, 33]) == -18
    assert diff.total_degree() == 2
    assert segrejet.morse_certificate(4, 2, 4)[1] is None

    bound = json.loads(segrejet.bound_report_json(4, 2, 4, "dim2"))
    assert bound["degree_threshold"] == "34"
    scan = json.loads(segrejet.bound_report_json(4, 2, 4, "scan"))
    assert scan["degree_threshold"] == "34"

    report = json.loads(segrejet.positivity_report_json(4, 2, 0))
    assert all(r["dominant_positive"] for r in report["records"])

    fields = json.loads(segrejet.vecfields_verify_json(3, [2, 2], "solved", samples=10, seed=7))
    assert fields["identical_vanishing"] is True and fields["residuals"] == []

    try:
        segrejet.positivity_report_json(4, 3, 0)
    except ValueError as err:
        assert "c >= n" in str(err)
    else:
        raise AssertionError("expected ValueError")

    (cid, passed, line), = segrejet.selftest(criterion=4)
    assert cid == 4 and passed, line
    print("python smoke test passed")


if __name__ == "__main__":
    main()
