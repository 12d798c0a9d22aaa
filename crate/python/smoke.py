"""Smoke test for the topcalc_py extension.

Build and run from the repository root:

    cargo build -p topcalc-py --release --features extension-module
    cp target/release/libtopcalc_py.so target/release/topcalc_py.so
    PYTHONPATH=target/release python3 python/smoke.py
"""

import topcalc_py as tc

t = tc.parse_term("\\x:A. y x", ctx="y: A -> Top")
assert str(tc.type_of(t)) == "A -> Top"
assert str(tc.normalize(t)) == "\\x:A. *"
assert [rule for rule, _, _ in tc.trace(t)] == ["eta", "g"]

x = tc.parse_term("x", ctx="x: A * Top")
assert tc.equal(x, tc.Term("<p1 x, star Top>", ctx="x: A * Top"))
assert not tc.equal(tc.Term("a", "a:A, b:A"), tc.Term("b", "a:A, b:A"))

nfs, capped = tc.normal_forms(t, system="naive")
assert len(nfs) == 2 and not capped
verdict, witness = tc.check(t, "cr", system="naive")
assert verdict == "FAIL" and witness is not None
assert tc.check(t, "cr")[0] == "PASS"

ty = tc.Type("(A -> Top) * Top")
assert ty.is_iso_top() and tc.is_iso_top(ty)
assert str(tc.star(ty)) == "<\\x:A. *, *>"

terms = tc.corpus(seed=3, count=20)
assert len(set(terms)) == 20
assert terms == tc.corpus(seed=3, count=20)

try:
    tc.parse_term("\\x:A. (x")
except ValueError:
    pass
else:
    raise AssertionError("parse error not raised")

print("smoke ok:", len(terms), "terms,", tc.__version__)
