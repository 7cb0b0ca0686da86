"""
Unit Tests module for testing individual packages.

This module contains unit tests for the structure and cube layers, the
amalgamation strategies, the Fraïssé runner, the dimension tools and the
command-line interface.
"""
