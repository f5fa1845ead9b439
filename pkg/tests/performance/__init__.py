"""Acceptance suites with wall-clock budgets."""
