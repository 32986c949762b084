#!/usr/bin/env python3
"""
Run every trajectory family and Deutsch run with plots enabled.

Usage:
    python scripts/plot_all.py [--output-dir outputs/plots]
"""

import argparse
import sys
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cli import main as run  # noqa: E402

ORACLES = ("f0", "f1", "f2", "f3")


def main() -> int:
    parser = argparse.ArgumentParser(description="Write every plot")
    parser.add_argument("--output-dir", default="outputs/plots")
    args = parser.parse_args()

    common = ["--output-dir", args.output_dir, "--emit-plots"]
    codes = [run(["trajectories", "--mode", "both"] + common)]
    for model in ("spin", "well"):
        for oracle in ORACLES:
            codes.append(run(["deutsch", "--model", model, "--oracle", oracle] + common))

    failed = [code for code in codes if code != 0]
    print(f"\n{'✅' if not failed else '❌'} {len(codes) - len(failed)}/{len(codes)} runs succeeded")
    return max(codes)


if __name__ == "__main__":
    sys.exit(main())
