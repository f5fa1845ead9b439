"""Permutations, permutation groups and groups given by multiplication tables."""
