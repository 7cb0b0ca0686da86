"""
This package contains the Fraïssé runner:

- `config`: the run configuration and its validation.
- `state`: immutable run states, extension tasks and witness chains.
- `tasks`: task enumeration and transport along the history.
- `runner`: single steps, rounds and whole runs.
- `coverage`: extension-axiom coverage reports.
- `certificate`: irreducibility certificates built from the witness chains.
"""
