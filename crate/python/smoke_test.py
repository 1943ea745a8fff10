"""Smoke test for the Python bindings.

Build the extension first, for example:

    cargo build --release -p sp6cells-py --features extension-module
    cp target/release/libsp6cells_py.so python/sp6cells.so

then run ``python3 python/smoke_test.py``.
"""

import sp6cells


def main():
    w = sp6cells.WeylElement("01321")
    assert str(w) == "01321"
    assert w.length() == 5
    assert w.inverse() == sp6cells.WeylElement("12310")
    assert sp6cells.WeylElement() == sp6cells.WeylElement("e")
    assert sp6cells.WeylElement.family("x1") == sp6cells.WeylElement("1210321")

    assert sp6cells.kl("121", "121") == "1"
    assert sp6cells.mu("0121", "01321") == 1

    xi3 = [(3, 1), (1, 3), (-1, 3), (-3, 1)]
    prod = dict(sp6cells.product(w.inverse(), w))
    assert sorted(prod) == ["1201321", "121"]
    assert all(sorted(c) == sorted(xi3) for c in prod.values())

    assert sp6cells.a_value("121") == 3
    assert sp6cells.gamma("12310", "01321", "121") == 1
    assert dict(sp6cells.j_mul("12310", "01321")) == {"1201321": 1, "121": 1}
    assert sp6cells.family_mul("D12", 1, 1) == "x2 + x1 + x0"

    try:
        sp6cells.WeylElement("12x")
    except ValueError:
        pass
    else:
        raise AssertionError("invalid word accepted")

    passed, report = sp6cells.verify(radius=8, structured=True)
    assert passed, report
    assert report.splitlines()[-1].endswith("status=PASS")
    print("smoke test passed")


if __name__ == "__main__":
    main()
