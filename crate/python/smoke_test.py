"""Smoke test for the Python bindings.

Build first: pip install --no-build-isolation ./crates/python
"""

import bimodal_py as bm

f = bm.Formula("exists x P(x)")
assert str(bm.translate("star", f)) == "<>G exists x []D P(x)"
assert str(bm.translate("godel", bm.Formula("P(a)"))) == "[]D P(a)"
assert bm.Formula("[]D (P(a) -> <>G Q(a))").language == "L^BM"

m = bm.Model("worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w1 P: (a)\n")
assert m.violations() == []
assert m.check("P(a) | ~P(a)", world="w0", semantics="classical")
assert not m.check("P(a) | ~P(a)", world="w0", semantics="forcing")

found = bm.countermodel(bm.Formula("P(a) -> []D <>D P(a)"), max_worlds=2, max_domain=1)
assert found is not None
model, world, assign = found
assert not model.check("P(a) -> []D <>D P(a)", world=world, assign=assign)
assert bm.countermodel(bm.Formula("<>G []D P(a) -> []D <>G P(a)"), max_worlds=3) is None

assert bm.prove("# system: BM-FOL\n1. []G P(a) -> P(a) ; schema T-G {phi := P(a)}\n") is None

passed, summary, _ = bm.run_suite("link", max_worlds=2, max_domain=1, depth=2)
assert passed, summary
assert "BM-FOL" in bm.inventory()
print("ok")
