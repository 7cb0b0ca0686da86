"""
This package contains the amalgamation strategy plug-ins. Each module exports:

FAMILY: str
create_strategy(n: int) -> AmalgamationStrategy
"""
