"""
Structures package: the finite structure layer.

Modules:
    - `validation`: Structural checks, the BKL_n axioms and axiom A1 for labels.
    - `closure`: Generated substructures, closed subsets and substructure independence.
    - `theta`: The characteristic formula theta_A and its evaluation.
    - `embeddings`: Embedding checks, backtracking search and isomorphism.
"""
