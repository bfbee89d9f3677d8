"""Hypergraph Lambek calculus, linearly restricted DPO rewriting, and the
translations between them, with exhaustive small-instance cross-checking."""
