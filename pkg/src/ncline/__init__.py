"""Exact computations with the noncommutative symmetric algebra of a rank-2 field bimodule."""
