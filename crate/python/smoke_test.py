"""Smoke test for the neron extension module. Run after installing the wheel."""

import json

import neron


def main():
    g = neron.cokernel([[2, 4], [6, 8]])
    assert g.rank == 0 and g.invariant_factors == [2, 4], g
    u, d, v = neron.smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4] or [d[0][0], d[1][1]] == [2, -4], d
    assert neron.FgAbGroup(1, [6, 4]) == neron.FgAbGroup(1, [2, 12])
    big = neron.cokernel([[2**70]])
    assert big.invariant_factors == [2**70]

    t = neron.Torus.from_corpus("norm-one-ramified-quadratic")
    assert t.rank == 1 and t.galois_order == 2 and t.inertia_order == 2
    assert t.reduction_type() == "Unipotent"
    assert t.component_group() == neron.FgAbGroup(0, [2])
    assert t.inertia_cohomology(1) == neron.FgAbGroup(0, [2])
    assert t.local_cohomology(1) == {"rank": 0, "invariant_factors": [2]}, t.local_cohomology(1)
    assert t.local_cohomology(3) == {"rank": 0, "invariant_factors": []}

    gm = neron.Torus.split(1)
    assert gm.reduction_type() == "Multiplicative"
    assert gm.component_group() == neron.FgAbGroup(1)
    assert gm.is_flasque()

    assert neron.RootDatum.split_sl(2).pi1().is_trivial()
    pgl2 = neron.RootDatum.split_pgl(2)
    assert pgl2.pi1() == neron.FgAbGroup(0, [2])
    h1 = pgl2.h1()
    assert h1["routes_agree"] and h1["result"] == {"rank": 0, "invariant_factors": [2]}, h1

    names = neron.corpus_names()
    assert "gm" in names and len(names) == len(set(names))
    doc = neron.corpus_document("c4-rotation-ramified")
    report = neron.run("component-group", doc)
    assert report["schema"] == "neron/1"
    assert all(c["passed"] for c in report["checks"]), report["checks"]
    assert neron.run("local-cohomology", doc, degree=2, mode="generic")["checks"]

    try:
        neron.Torus.from_json(json.dumps({"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [[2]]}]}}))
    except neron.InputError as e:
        assert "$.galois" in str(e), e
    else:
        raise AssertionError("non-invertible generator accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
