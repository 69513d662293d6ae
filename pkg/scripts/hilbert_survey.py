#!/usr/bin/env python3
"""Survey the preset catalog: Hilbert prefixes, Groebner basis sizes, and
agreement with the Klein twist, through a configurable degree."""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cotwist.gbasis import hilbert_coeffs, truncated_gb
from cotwist.presets import PRESET_NAMES, preset
from cotwist.twist import twist_presentation


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--degree", type=int, default=6)
    args = parser.parse_args()

    print(f"{'preset':>14}  {'gb':>3}  hilbert prefix (degree <= {args.degree})"
          f"   matches twist")
    for name in PRESET_NAMES:
        p = preset(name)
        dims = hilbert_coeffs(p.presentation, args.degree)
        gb = truncated_gb(p.presentation, args.degree)
        twisted = twist_presentation(p.twist_spec())
        same = dims == hilbert_coeffs(twisted.presentation, args.degree)
        print(f"{name:>14}  {len(gb.elements):>3}  {list(dims)}   {same}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
