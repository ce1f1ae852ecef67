"""Write the hand-transcribed golden fixtures into the package data directory.

Every value below is typed in literally; nothing is computed by the library
except the grey refinement list, which is checked against brute force in the
test suite.
"""

from __future__ import annotations

import json
from pathlib import Path

from positroid_tilings.hypersimplex import decompose_pt_polytope
from positroid_tilings.subdivision import Subdivision

DATA = Path(__file__).resolve().parents[1] / "src" / "positroid_tilings" / "data"


def poly(color, *vs):
    return {"color": color, "vertices": list(vs)}


FIXTURES = {
    "d_2_4.json": {
        "description": "The four permutations in D_{2,4} with their cyclic descent sets.",
        "k": 1,
        "n": 4,
        "words": [[1, 3, 2, 4], [3, 1, 2, 4], [2, 1, 3, 4], [2, 3, 1, 4]],
        "cdes": [[2, 4], [2, 4], [1, 4], [1, 4]],
    },
    "wsimplex_1324.json": {
        "description": "Rotations and vertex sets of the w-simplex for w = 1324.",
        "w": [1, 3, 2, 4],
        "rotations": [[3, 2, 4, 1], [4, 1, 3, 2], [2, 4, 1, 3], [1, 3, 2, 4]],
        "vertex_sets": [[1, 2], [2, 3], [1, 3], [2, 4]],
    },
    "bicolored_2_6.json": {
        "description": "A bicolored subdivision of type (2,6) whose tile holds 16 w-simplices; "
        "6 of them have 1 immediately followed by 4.",
        "subdivision": {"n": 6, "polygons": [poly("white", 1, 2, 3), poly("black", 1, 3, 4),
                                             poly("white", 1, 4, 6), poly("black", 4, 5, 6)]},
        "extensions": ["512436", "351246", "531246", "125436", "312546", "152436", "315246", "154236",
                       "315426", "231546", "514236", "351426", "531426", "235146", "253146", "523146"],
        "adjacent_1_4": ["514236", "351426", "531426", "235146", "253146", "523146"],
        "contraction_1_4": {
            "left": {"n": 3, "labels": [2, 3, "*"], "polygons": [poly("white", 2, 3, "*")]},
            "right": {"n": 3, "labels": [5, 6, "*"], "polygons": [poly("black", 5, 6, "*")]},
        },
    },
    "bicolored_5_9.json": {
        "description": "A bicolored subdivision of type (5,9) used for arc compatibility and area examples.",
        "subdivision": {"n": 9, "polygons": [poly("white", 1, 2, 7), poly("black", 1, 7, 8, 9),
                                             poly("black", 2, 3, 4, 6, 7), poly("white", 4, 5, 6)]},
        "area": [[3, 7, 2], [6, 4, 5]],
        "incompatible": [[1, 4]],
        "facet_defining": [[6, 4], [2, 7], [4, 3]],
    },
    "tricolored_3_2_8.json": {
        "description": "A tricolored subdivision of type (3,2,8) with one grey quadrilateral; its order "
        "is the union of the chains (2,5,7), (5,7,6), (1,8,7,2).",
        "subdivision": {"n": 8, "polygons": [poly("black", 1, 2, 7, 8), poly("grey", 2, 3, 4, 5),
                                             poly("white", 2, 5, 7), poly("black", 5, 6, 7)]},
        "chains": [[2, 5, 7], [5, 7, 6], [1, 8, 7, 2]],
        "bounds": [[[1, 7], 3, 6], [[5, 6], 1, 2]],
    },
    "chamber_2564137.json": {
        "description": "A 2 x 7 matrix lying in the chamber of w = 2564137.",
        "w": [2, 5, 6, 4, 1, 3, 7],
        "matrix": [["1", "1", "-1", "-1", "1", "1", "-1"], ["1", "4", "-2", "-7", "5", "6", "-3"]],
    },
}


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    tau = Subdivision.from_json(FIXTURES["tricolored_3_2_8.json"]["subdivision"])
    FIXTURES["tricolored_3_2_8.json"]["refinement"] = [s.to_json() for s in decompose_pt_polytope(tau)]
    for name, data in FIXTURES.items():
        (DATA / name).write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
