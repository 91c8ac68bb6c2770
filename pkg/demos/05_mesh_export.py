"""Writing a surface patch as an OBJ mesh."""

import os
import tempfile

import numpy as np

from minstab.cli import obj_mesh
from minstab.samples import enneper

text, n_vertices, n_faces = obj_mesh(enneper(), radius=1.2, samples=24)
print(n_vertices, "vertices,", n_faces, "faces")
print("\n".join(text.splitlines()[:4]))

path = os.path.join(tempfile.gettempdir(), "enneper.obj")
with open(path, "w") as fh:
    fh.write(text)
print("written to", path)

# %% the same through the command line:
#     minstab mesh demos/data/enneper.json enneper.obj --radius 1.2 --samples 24
verts = np.array([[float(x) for x in line.split()[1:]]
                  for line in text.splitlines() if line.startswith("v ")])
print("bounding box:", verts.min(axis=0).round(3), verts.max(axis=0).round(3))
