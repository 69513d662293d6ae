#!/usr/bin/env python3
"""Run the four built-in twist equivalences and print a compact summary."""

import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cotwist.presets import run_twist_suite


def main() -> int:
    start = time.perf_counter()
    report = run_twist_suite()
    elapsed = round(time.perf_counter() - start, 3)
    for pair in report["pairs"]:
        scalars = ", ".join(pair["scalars"])
        print(f"{pair['source']:>14} --twist--> {pair['target']:<14} "
              f"{pair['verdict']:<10} scalars ({scalars})  "
              f"hilbert {pair['hilbert']}")
    print(f"\n{'all four equivalences verified' if report['passed'] else 'FAILED'}"
          f" in {elapsed}s at degree {report['degree']}")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
