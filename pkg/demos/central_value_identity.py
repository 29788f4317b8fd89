"""Both sides of the central value identity for D = 3 and D = 15."""

import math

from hermlift.eigenforms import ingest_newform, level1_eigenform
from hermlift.lvalue import central_value, dirichlet_L1, rankin_coefficients
from hermlift.pullback import petersson_norm, rhs_main_theorem
from hermlift.quadfield import class_group

g = level1_eigenform(12, 1600)
norm = petersson_norm(g).value

for name in ("example1", "example2"):
    f = ingest_newform(name)
    D, k = f.D, f.kappa
    L = central_value(rankin_coefficients(f, g, f.n_max), f)
    side = rhs_main_theorem(f, g, class_group(D), norm)
    scale = dirichlet_L1(D) * (4 * math.pi) ** (2 * k + 1) / math.factorial(2 * k) * norm
    print(f"D = {D}")
    print(f"  L(1/2, f x g)          = {L.value:.15f}  ({L.n_terms} terms, error {L.error:.1e})")
    print(f"  normalised L-value     = {L.value * f.a(D) / scale:.10f}")
    for rep, c0 in side.per_class:
        print(f"  c0 for {tuple(rep.form)!s:<14} = {complex(c0):.10f}")
    print(f"  class average          = {side.average:.10f}")
    print(f"  L(1/2) from the periods = {side.value:.15f}\n")
