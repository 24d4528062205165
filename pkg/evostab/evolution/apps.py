"""
SPDX-License-Identifier: BSD-3-Clause

Define app configuration for evolution.
"""

from django.apps import AppConfig


class EvolutionConfig(AppConfig):
    """Define app configuration for evolution."""

    name = 'evolution'
