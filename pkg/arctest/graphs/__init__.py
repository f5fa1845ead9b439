"""Digraphs, s-arc oracles and coset digraphs."""
