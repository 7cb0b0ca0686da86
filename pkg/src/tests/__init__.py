"""
Tests package for the command-line tool and its libraries.

Subpackages:
    - `unit_tests`: Unit tests per package, plus tests of the `app` entry point.
"""
