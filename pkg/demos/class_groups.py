"""Class groups, normalised representatives and genus characters."""

from hermlift.chartools import genus_subsets
from hermlift.quadfield import class_group, genus_character_average

for D in (3, 15, 20, 23, 84, 420):
    cg = class_group(D)
    forms = ", ".join(f"({a},{b},{c})" for a, b, c in (r.form for r in cg.reps))
    print(f"D={D:4d}  h={cg.h_K}  squares={len(cg.squares)}  reps: {forms}")

# Averages of chi_Q(-N(c)) over Cl/Cl^2 vanish unless chi_Q is trivial on classes.
for D in (15, 23, 84):
    cg = class_group(D)
    row = {"".join(map(str, sorted(Q))) or "-": str(genus_character_average(D, cg, Q))
           for Q in genus_subsets(D)}
    print(f"D={D}: genus averages {row}")
