"""Fourier coefficients of the hermitian Maass lift for the D = 3 form, exactly."""

from hermlift.eigenforms import ingest_newform
from hermlift.maasslift import HermitianIndex, LiftTable, aD_factor, alpha_F, fc_star, lift_coefficient
from hermlift.pullback import enumerate_pullback_points, pullback_c0
from hermlift.quadfield import class_group

f = ingest_newform("example1")
table = LiftTable(f, class_group(3).reps[0], exact=True)

print("n   a_f(n)                     a_D(n)  alpha_F(n)             twisted sum")
for n in range(1, 13):
    print(f"{n:<3} {str(f.coeff(n, True)):<26} {aD_factor(table, n):<7} "
          f"{str(alpha_F(table, n)):<22} {fc_star(table, n)}")

print("\nlattice points with Q(x, y) < D and their lift coefficients:")
for x, y in enumerate_pullback_points(table.rep):
    H = HermitianIndex(1, 1, x, y, table.rep)
    print(f"  ({x:2d},{y:2d})  N_H = {H.N_H}  A_F = {lift_coefficient(table, H)}")

c0 = pullback_c0(table).c0
print(f"\nc0 = {c0}  (24 * a_f(2) = {24 * f.coeff(2, True)})")
