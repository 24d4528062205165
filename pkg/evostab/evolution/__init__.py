"""Decide evolutionary stability of strategies in finite symmetric games.

This Django application holds the exact-arithmetic core: games and mixed
strategies, the ESS and multiple-mutation stability decisions, invasion
barriers, and the brute-force oracle that certifies every decision.
"""
