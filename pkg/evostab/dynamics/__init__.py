"""Simulate multi-mutant invasions with replicator dynamics.

Floats enter the toolkit only here: the exact payoffs among the strategies
in a scenario are converted once and then integrated numerically.
"""
