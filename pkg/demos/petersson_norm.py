"""Petersson norms of the level one eigenforms of dimension-one weights."""

from hermlift.eigenforms import LEVEL1_WEIGHTS, level1_eigenform
from hermlift.pullback import petersson_norm, scaled_petersson

for k in LEVEL1_WEIGHTS:
    pn = petersson_norm(level1_eigenform(k, 80))
    print(f"k={k:2d}  <g,g> = {pn.value:.16e}  (est. error {pn.error:.1e}, "
          f"strip nodes {pn.nodes})")

delta = petersson_norm(level1_eigenform(12, 60)).value
print(f"\n<Delta(17z), Delta(17z)> = 17^12 <Delta, Delta> = {scaled_petersson(delta, 17, 5):.6e}")
