"""
SPDX-License-Identifier: BSD-3-Clause

Define test cases for the shared rational helpers.
"""

from fractions import Fraction
from math import comb

import hypothesis.strategies as st
from django import test
from django.core.exceptions import ImproperlyConfigured
from hypothesis import given

from .util import compositions, format_rational, format_vector, \
    parse_rational, positive_int_setting


class RationalTestCase(test.SimpleTestCase):
    """Test parsing and formatting of exact rationals."""

    def test_parse(self):
        """Verify accepted rational forms."""
        self.assertEqual(parse_rational('-3/4'), Fraction(-3, 4))
        self.assertEqual(parse_rational(' 6 / 8 '), Fraction(3, 4))
        self.assertEqual(parse_rational('+2'), 2)
        self.assertEqual(parse_rational(5), 5)

    def test_parse_rejects(self):
        """Verify rejected rational forms."""
        for value in ('1/0', '0.5', '1e3', '', 'a/b', '1/-2', 0.5, True,
                      None):
            with self.assertRaises(ValueError):
                parse_rational(value)

    def test_format(self):
        """Verify canonical formatting."""
        self.assertEqual(format_rational(Fraction(6, -8)), '-3/4')
        self.assertEqual(format_rational(Fraction(4, 2)), '2')
        self.assertEqual(format_vector([Fraction(1, 2), 0, 1]), '[1/2,0,1]')

    @given(st.fractions())
    def test_format_parses_back(self, value):
        """Verify formatted rationals parse back."""
        self.assertEqual(parse_rational(format_rational(value)), value)


class CompositionsTestCase(test.SimpleTestCase):
    """Test enumeration of integer compositions."""

    def test_order(self):
        """Verify lexicographic order."""
        self.assertEqual(list(compositions(2, 2)), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(list(compositions(3, 1)), [(3,)])

    def test_count(self):
        """Verify the number of compositions."""
        for total in range(6):
            for parts in range(1, 5):
                items = list(compositions(total, parts))
                self.assertEqual(len(items), comb(total + parts - 1,
                                                  parts - 1))
                self.assertEqual(items, sorted(set(items)))
                self.assertTrue(all(sum(c) == total for c in items))


class PositiveIntSettingTestCase(test.SimpleTestCase):
    """Test reading worker counts from the environment."""

    def test_values(self):
        """Verify defaults and clamping."""
        self.assertEqual(positive_int_setting('THREADS', None), 1)
        self.assertEqual(positive_int_setting('THREADS', '', 3), 3)
        self.assertEqual(positive_int_setting('THREADS', ' 4 '), 4)
        self.assertEqual(positive_int_setting('THREADS', '-2'), 1)

    def test_invalid(self):
        """Verify a non-integer value is reported as misconfiguration."""
        with self.assertRaisesMessage(ImproperlyConfigured, "'abc'"):
            positive_int_setting('THREADS', 'abc')
