"""Log K3 surfaces on del Pezzo surfaces of degree at least five: combinatorics,
characteristic classes, integral points and the Brauer class of the
counterexample family."""

__version__ = "0.1.0"
