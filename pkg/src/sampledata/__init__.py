"""
Sample Data package for seeded random inputs.

This package provides random family members, pairs of members and disjoint
partial cubes, used by the test suite and for experimenting with the CLI.

Modules:
    generators: Seeded generators built on one-point extensions and amalgamation.
"""
