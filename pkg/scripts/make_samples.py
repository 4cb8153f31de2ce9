#!/usr/bin/env python3
"""Regenerate the sample input documents under docs/samples/."""

import json
import pathlib
import random

from l2mhs.documents import (
    arrangement_to_document,
    double_complex_to_document,
    filtered_complex_to_document,
)
from l2mhs.complexes import DoubleComplex
from l2mhs.generators import random_filtered_complex
from l2mhs.presets import (
    annulus_arrangement,
    curve_arrangement,
    genus2_triangulation,
    p1_cyclic_cover,
    torus_triangulation,
    triangle_configuration,
)
from l2mhs.ratlinalg import RatMatrix

OUT = pathlib.Path(__file__).resolve().parent.parent / "docs" / "samples"


def dump(name, doc):
    path = OUT / name
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    g2 = genus2_triangulation()
    model = (g2, [[0], [1], [9]])
    dump("genus2_curve.json",
         arrangement_to_document(curve_arrangement(2, 3), simplicial_model=model))

    dump("annulus.json", arrangement_to_document(annulus_arrangement()))

    arr, gysin = triangle_configuration()
    dump("triangle_surface.json", arrangement_to_document(arr, gysin))

    arr, cover = p1_cyclic_cover(2, free_punctures=1)
    dump("p1_double_cover.json", arrangement_to_document(arr, None, cover))

    rng = random.Random(2024)
    fc, _ = random_filtered_complex(rng, max_total_dim=8)
    dump("filtered_complex.json", filtered_complex_to_document(fc))

    counterexample = DoubleComplex.from_dims(
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        {(0, 0): RatMatrix.identity(1), (0, 1): RatMatrix.identity(1)},
        {},
    )
    dump("double_complex_nondegenerate.json", double_complex_to_document(counterexample))

    dump("standalone_graph.json", {
        "vertices": ["a", "b", "c"],
        "edges": [
            {"id": "ab", "ends": ["a", "b"]},
            {"id": "bc", "ends": ["b", "c"]},
            {"id": "ca", "ends": ["c", "a"]},
        ],
        "form": [[-2, 1, 1], [1, -2, 1], [1, 1, -2]],
    })

    # a genuine Z/2 cocycle on the 7-vertex torus: every triangle has edge
    # slopes {1, 2, 3}, so labeling slopes 1 and 2 with the nontrivial
    # element satisfies the cocycle condition and is not a coboundary
    torus = torus_triangulation()
    labels = []
    for (u, v) in torus.simplices(1):
        slope = min(v - u, 7 - (v - u))
        if slope in (1, 2):
            labels.append({"edge": [u, v], "element": 1})
    dump("torus_cover_oracle.json", {
        "maximal_simplices": [list(s) for s in torus.simplices(2)],
        "divisor": [[0]],
        "monodromy": {
            "group": {"table": [[0, 1], [1, 0]]},
            "edge_labels": labels,
        },
    })


if __name__ == "__main__":
    main()
