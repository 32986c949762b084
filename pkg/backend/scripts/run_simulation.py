#!/usr/bin/env python3
"""
Run the pilot-wave simulator.

Usage:
    python scripts/run_simulation.py deutsch --model spin --oracle f3
    python scripts/run_simulation.py trajectories --mode both --emit-plots
    python scripts/run_simulation.py ensemble --experiment born --n 10000
    python scripts/run_simulation.py verify
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment
load_dotenv()

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
