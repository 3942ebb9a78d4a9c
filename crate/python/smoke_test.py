"""Smoke test for the unicellular_rs extension.

Build and run from the repository root:

    cargo build --release -p unicellular-python --features extension-module
    cp target/release/libunicellular_rs.so python/unicellular_rs.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import unicellular_rs as u


def main():
    c = u.Coding("abcdBeCfAEFD")
    assert (c.genus, c.vertex_count, c.degrees) == (2, 3, [4, 4, 4])
    assert u.Coding("1 2 -1 -2").equivalent(u.Coding("baBA"))
    assert c.canonical().canonical() == c.canonical()

    # every surgery keeps genus and degrees and is undone by the barred pair
    for x, y, t in c.surgeries():
        assert (t.genus, t.degrees) == (2, [4, 4, 4])
        assert c.double_surgery_identity(x, y)

    form = c.intersection_form()
    assert len(form) == 4 and all(form[i][i] == 0 for i in range(4))
    assert any(c.graph_class())

    g = u.surgery_graph(2, [4, 4, 4])
    assert g["components"] == 1 and len(g["nodes"]) == 6

    assert [u.orbit_size(k) for k in (1, 2, 3)] == [3, 15, 63]
    assert u.stabilizer_check(2) == (48, 48, True)

    v = [7, -4, 6, 10, -2, 4]
    word = u.vector_reduce(v)
    assert u.apply_move_word(word, v) == [1, 0, 0, 0, 0, 0]
    assert u.vector_reduce([1, 2, 0, 0]) == [("eta", [0, 1, 0, 0], -2)]

    try:
        u.Coding("abab")
    except ValueError:
        pass
    else:
        raise AssertionError("same-orientation pair accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
