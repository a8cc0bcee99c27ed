"""Physical and numerical constants.

The package works in natural units: the reduced Planck constant and the
particle mass default to 1.  They are still carried as named symbols so the
formulas keep their dimensional structure readable.
"""

#: Reduced Planck constant in the package's natural units.
HBAR: float = 1.0

#: Default mass of the particle.
MASS: float = 1.0

#: Default seed for every stochastic helper (multi-start searches, random
#: parameter draws in self-checks).  Chosen once so results are reproducible.
DEFAULT_SEED: int = 1729

#: Relative floor below which the quadratic form of a packet is considered
#: degenerate (non-normalizable).
DELTA_FLOOR: float = 1e-12
