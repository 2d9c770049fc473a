"""Quick check of the extension module. Build it first with `maturin develop` in crates/python."""
import json

import pyskeinlab as sk

s = sk.Slope(1, 1)
assert (s.p, s.q) == (1, 1) and str(s) == "1/1"
assert sk.Slope.parse("-3/2") == sk.Slope(-3, 2)
assert sk.Slope(3, 2).dual() == (1, 1)

assert sk.dimension("fig8", s) == ("exact", 4)
assert sk.dimension("torus", s, n=1) == ("exact", 3)
assert sk.dimension("fig8", sk.Slope(4, 1)) == ("not_determined", None)

assert sk.nonabelian_formula("fig8", sk.Slope(5, 1)) == 4
assert sk.nonabelian_oracle("fig8", sk.Slope(5, 1)) == 4
assert sk.count_abelian(sk.Slope(5, 1)) == 3

report = json.loads(sk.dimension_report("fig8", s))
assert report["schema"] == 1 and report["verification"]["passed"]

chars = json.loads(sk.characters("torus", s, n=1))
assert len(chars) == 3

assert sk.basis("fig8", sk.Slope(1, 2)) == ["1"] + [f"t_{{0/1}}^{j}" if j > 1 else "t_{0/1}" for j in range(1, 8)]
assert sk.basis("torus", sk.Slope(2, 1), n=1) is None

assert sk.rt_lens(1, 10) == ["1"]
integral, residue, legendre, congruent = sk.murakami(2, 10)
assert integral and congruent and residue == legendre

for bad in (lambda: sk.Slope(0, 0), lambda: sk.dimension("torus", s), lambda: sk.rt_lens(2, 7)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

print("smoke test ok")
