"""Central values of L(s, f x g) from pullbacks of hermitian Maass lifts.

Modules:
    chartools   Kronecker, Hilbert and genus characters
    quadfield   binary quadratic forms and class groups of Q(sqrt(-D))
    eigenforms  q-expansions, fixtures and Hecke validation
    maasslift   Fourier coefficients of the hermitian Maass lift
    pullback    diagonal restriction, Petersson norms, period side
    lvalue      Rankin-Selberg coefficients and the central value
    cli         command line front end
"""

__version__ = "0.1.0"
