"""
This package contains the amalgamation layer:

- `colimit`: set-level colimits of partial cubes by union-find.
- `completion`: turning a colimit into a full member structure, and the BKL_n
  completion recipe.
- `strategy`: the strategy interface, one-point extensions and the extension
  universe used by coverage reports and generic samples.
- `strategymgr`: discovery of the strategy plug-ins in `strategies`.
- `extension`: extending a full cube along an embedding at one face.
- `sharpness`: empty-face absorption and the failure witness for k = n+1.
- `allocators`: fresh element ids and fresh label sets.
"""
