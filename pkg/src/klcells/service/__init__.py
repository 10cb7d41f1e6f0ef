"""HTTP service exposing the package's computations."""
