#!/usr/bin/env python3
"""Master test runner for all simulator test suites."""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from utils import load_config, setup_logger

SUITES = [
    ("Setup", "test_setup.py"),
    ("Gate algebra", "test_gate_algebra.py"),
    ("Spin model", "test_spin_model.py"),
    ("Well model", "test_well_model.py"),
    ("Well dynamics", "test_well_dynamics.py"),
    ("Ensembles", "test_ensemble.py"),
    ("Command line", "test_cli.py"),
]


def run_suite(name: str, filename: str) -> bool:
    """Run a single test file and return whether it passed."""
    print(f"\n{'='*60}")
    print(f"Running: {name}")
    print('='*60)
    code = pytest.main([str(Path(__file__).parent / filename), "-q"])
    return code == pytest.ExitCode.OK


def main() -> int:
    """Run all tests."""
    config = load_config()
    logger = setup_logger("test_runner", "INFO", config.log_dir)

    print("🧪 Pilot-Wave Deutsch - Full Test Suite")
    print("="*60)
    print("This will test all major components:")
    for i, (name, _) in enumerate(SUITES, 1):
        print(f"  {i}. {name}")
    print("="*60)

    results = {}
    for i, (name, filename) in enumerate(SUITES, 1):
        print(f"\n📍 Test Suite {i}/{len(SUITES)}: {name}")
        results[name] = run_suite(name, filename)
        logger.info(f"{name}: {'passed' if results[name] else 'failed'}")

    print(f"\n{'='*60}")
    print("📊 TEST SUMMARY")
    print('='*60)
    for name, passed in results.items():
        status = "✅ PASS" if passed else "❌ FAIL"
        print(f"{status}  {name}")

    passed = sum(results.values())
    print(f"\nTotal: {passed}/{len(results)} suites passed")
    if passed == len(results):
        print("\n🎉 All tests passed!")
        return 0
    print("\n⚠️  Some tests failed. Check the output above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
