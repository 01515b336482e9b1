#!/usr/bin/env python3
"""
Benchmark Conversion Script
===========================

This script converts vrp-rep benchmark XML instances into the canonical
JSON format, validating each one on the way. Instances that fail
validation are reported and skipped.

Usage:
    python scripts/convert_benchmarks.py data/instances [--output data/canonical] [--q-max 16]
"""

import argparse
import os
import sys
from pathlib import Path

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.exceptions import InstanceError
from src.instance import BENCHMARK, dump_instance, load_instance


def convert_benchmarks(source, output, q_max=None):
    """
    Convert every XML instance under source.

    This function:
    1. Parses each file with the benchmark importer
    2. Validates the resulting instance
    3. Writes <name>.json into the output directory

    Returns:
        tuple: (converted count, failed count)
    """
    files = sorted(Path(source).glob("*.xml")) if Path(source).is_dir() else [Path(source)]
    output = Path(output)
    output.mkdir(parents=True, exist_ok=True)
    overrides = {"q_max": q_max} if q_max is not None else None

    converted, failed = 0, 0
    for path in files:
        try:
            instance = load_instance(path, format=BENCHMARK, overrides=overrides)
        except InstanceError as e:
            print(f"  ❌ {path.name}: {e}")
            failed += 1
            continue
        dump_instance(instance, output / f"{instance.name}.json")
        print(f"  ✅ {path.name}: {len(instance.customers)} customers, "
              f"{len(instance.stations)} stations")
        converted += 1
    return converted, failed


def main(argv=None):
    parser = argparse.ArgumentParser(description="Convert benchmark XML instances to canonical JSON")
    parser.add_argument("source", help="XML file or directory of XML files")
    parser.add_argument("--output", default="data/canonical")
    parser.add_argument("--q-max", type=float, help="battery capacity override in kWh")
    args = parser.parse_args(argv)

    print("🔄 Benchmark conversion")
    print("=" * 40)
    try:
        converted, failed = convert_benchmarks(args.source, args.output, args.q_max)
    except OSError as e:
        print(f"❌ Error: {e}")
        return False

    print(f"\n📊 Converted {converted} instances, {failed} failed")
    return failed == 0


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
