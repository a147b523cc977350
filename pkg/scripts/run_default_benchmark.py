#!/usr/bin/env python3
"""Run the default benchmark config and print the aligned report.

Usage: python scripts/run_default_benchmark.py [config.json] [--format FMT]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), "src"))

from foretel.benchmark import load_config, render_report, run_benchmark

DEFAULT = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                       "configs", "default_benchmark.json")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("config", nargs="?", default=DEFAULT)
    parser.add_argument("--format", default="aligned-table",
                        choices=["aligned-table", "comma-separated", "json-lines"])
    args = parser.parse_args()
    report = run_benchmark(load_config(args.config))
    print(render_report(report, args.format))


if __name__ == "__main__":
    main()
