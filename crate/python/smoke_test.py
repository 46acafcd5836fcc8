"""Smoke test for the Python bindings.

Build and install first:

    pip install maturin
    pip install --no-build-isolation ./crates/python
"""

import sys
from pathlib import Path

import gencohom

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

HR = """
[ring]
vars = x1 x2 y1
degrees = (1,0) (1,0) (0,1)

[module N]
x1*y1

[params]
window = 2
"""


def main() -> int:
    assert gencohom.is_sharp([[1, 0]], [[0, 1]])
    assert not gencohom.is_sharp([[1]], [[1]])

    inst = gencohom.Instance.parse(HR)
    assert inst.dim == 3 and inst.nvars == 3 and inst.characteristic == 32003
    assert inst.is_sharp() and inst.sharpness_witness() is None
    assert inst.betti("N") == [1, 1]

    hyp = inst.hypotheses()
    assert hyp["cohen_macaulay"] and hyp["branch"] == "M finite pd", hyp

    table = inst.cohomology(block="p", window=1)
    assert table[(1, (-1, 1))] == 1, table
    assert all(v == 0 for (i, _), v in table.items() if i == 0)

    res = inst.verify_duality()
    assert res.passed, res.text()
    assert res.summary == f"PASS {len(res.cells)}/{len(res.cells)} cells"
    assert res.tsv().startswith("i\tdegree\tlhs\trhs\tmatch\n")

    rahimi = inst.scenario("herzog_rahimi", window=1)
    assert rahimi.passed

    koszul = gencohom.Instance.load(str(INSTANCES / "koszul.ring"))
    assert koszul.betti() == [1, 2, 1]

    nonsharp = gencohom.Instance.load(str(INSTANCES / "nonsharp.ring"))
    assert nonsharp.sharpness_witness() == ([1], [1])
    try:
        nonsharp.verify_duality(window=1)
    except gencohom.HypothesisViolation as e:
        assert "not sharp" in str(e)
    else:
        raise AssertionError("expected HypothesisViolation")

    try:
        gencohom.Instance.parse("[ring]\nvars = x1\ndegrees = 1 1\n")
    except ValueError as e:
        assert "line 3" in str(e), e
    else:
        raise AssertionError("expected a parse error")

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
