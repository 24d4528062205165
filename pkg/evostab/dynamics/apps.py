"""
SPDX-License-Identifier: BSD-3-Clause

Define app configuration for dynamics.
"""

from django.apps import AppConfig


class DynamicsConfig(AppConfig):
    """Define app configuration for dynamics."""

    name = 'dynamics'
