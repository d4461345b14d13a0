"""finitude: solvability of equations in finite terms.

A symbolic-numeric toolkit that decides representability of algebraic
functions by radicals and k-radicals through their monodromy groups, builds
explicit radical towers where the theory is constructive, classifies
polynomials invertible by radicals, integrates rational functions in
Liouville form, analyzes generalized Riccati equations of linear ODEs, and
probes Fuchsian systems for solvability by quadratures.

All exact values are immutable after construction; operations are pure
functions, so everything here is safe to share across threads.
"""

__version__ = "0.1.0"
