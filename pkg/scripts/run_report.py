#!/usr/bin/env python3
"""Run the full verification battery and dump the machine-readable report."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cotwist.presets import full_report


def main() -> int:
    report = full_report()
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
