"""
Helpers package for input, output and process settings.

Modules:
    - `serialization`: Canonical JSON documents for structures, cubes and
                       embeddings, with the document error codes.
    - `manifest`: Writes run directories with their sha256 manifest and
                  re-verifies them.
    - `settings`: Settings read from the environment.
"""
