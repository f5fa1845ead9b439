"""
arctest: build coset digraphs from permutation groups and verify
s-arc-transitivity, both by group factorization criteria and by direct
orbit computation on the digraph.

- Permutation groups with deterministic stabilizer chains
- Coset digraphs Cos(G, H, g) and their factorization criteria
- The diagonal construction over a finite centerless group T
- The product-action family built on two copies of A_n
- A command line with JSON reports and a self-test suite
"""

__version__ = "0.1.0"
