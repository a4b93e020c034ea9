"""Perturbative Casimir energies and forces between weakly coupled bodies.

Submodules
----------
susceptibility
    Frequency-dependent response models at imaginary frequency.
kernels
    Free propagators and pair kernels for scalar, EM and Proca fields.
geometry
    Bodies, quadrature rules and separation checks.
thermal
    Zero-temperature frequency integrals and Matsubara sums.
perturbation
    Pair energies, the trace-log series, log-determinants and forces.
closedform
    Closed-form oracles for the standard geometries.
validate
    The engine-versus-oracle check suite.
cli
    Command-line front end.

The package root imports nothing heavy so that the command line can set the
linear-algebra thread count before numpy loads.
"""

__version__ = "0.1.0"

__all__ = ["susceptibility", "kernels", "geometry", "thermal", "perturbation", "closedform", "validate", "cli"]
