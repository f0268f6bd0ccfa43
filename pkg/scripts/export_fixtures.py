#!/usr/bin/env python3
"""Write the built-in fixtures as input documents for the CLI and service.

    python scripts/export_fixtures.py [outdir]

Then e.g.:

    polystatics analyze outdir/tetra_regular.json
    polystatics serve outdir/grid_5x5x1.json --port 8720
"""

import json
import sys
from pathlib import Path

from polystatics import complex_to_document
from polystatics.fixtures import glued_boxes, reciprocity_corpus, tetra_fixture


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("fixtures_out")
    outdir.mkdir(parents=True, exist_ok=True)
    items = list(reciprocity_corpus())
    items.append(("tetra_force", tetra_fixture(role="force")))
    items.append(("tetra_interior_ssp", tetra_fixture(stress_cell=0)))
    items.append(("glued_boxes_dof0", glued_boxes(stress_cell=0)))
    for name, cx in items:
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(complex_to_document(cx), indent=2) + "\n")
        v, e, f, c = cx.system_counts
        print(f"{path}  (v={v} e'={e} f'={f} c'={c})")


if __name__ == "__main__":
    main()
