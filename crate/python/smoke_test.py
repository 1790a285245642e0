"""Smoke test for the nonassoc_py extension.

Build and install first:
    pip install -e crates/python --no-build-isolation --config-settings editable_mode=compat
"""

from fractions import Fraction

import nonassoc_py as na


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def flat(m):
    return [x for row in m for x in row]


def main():
    m2 = na.Algebra.matrix(2)
    assert m2.dim == 4
    assert m2.is_associative()
    assert not m2.is_commutative()
    assert m2.unit() == [1, 0, 0, 1]

    x = [[Fraction(1, 2), 2], [-1, 3]]
    y = [[0, Fraction(-2, 3)], [5, 1]]
    got = m2.mul(flat(x), flat(y))
    assert got == flat(matmul(x, y)), got
    assert all(isinstance(c, Fraction) for c in got)

    lie = m2.derive("commutator")
    assert lie.check("jacobi") and lie.check("antisymmetry")
    v = m2.check("jacobi")
    assert not v and v.witness["at"] == ("basis", [0, 0, 0])

    # second-column matrices [[0,a],[0,b]] and the square-zero u of the weight-0 example
    emb = na.Embedding(m2, [[0, 1, 0, 0], [0, 0, 0, 1]])
    sub = emb.subalgebra()
    u = [[1, -1], [1, -1]]
    assert matmul(u, u) == [[0, 0], [0, 0]]
    r = emb.left_multiplication(flat(u))
    assert r.check(sub, "rota_baxter(0)")
    bumped = na.Operator([[r.rows()[i][j] + (i == j) for j in range(2)] for i in range(2)])
    failed = bumped.check(sub, "rota_baxter(0)")
    assert not failed and failed.witness["lhs"] != failed.witness["rhs"]

    offset, directions = emb.solve_linear(["stabilize"])
    assert len(directions) == 4
    found = emb.find_special(["stabilize"], "nilpotent2", [[1, -1, 1, -1], [1, 0, 0, 1]])
    assert found == [flat(u)], found
    items = emb.verify_element(flat(u), ["stabilize"], "nilpotent2")
    assert all(v for _, v in items)

    try:
        na.Embedding(m2, [[0, 1, 1, 0]])
    except ValueError as e:
        assert "closed" in str(e) or "span" in str(e), e
    else:
        raise AssertionError("non-closed basis accepted")

    names = na.list_fixtures()
    assert len(names) == 13
    for name in names:
        report = na.verify_fixture(name)
        assert report.passed, str(report)
    print(f"smoke test passed ({len(names)} fixtures verified)")


if __name__ == "__main__":
    main()
