#!/usr/bin/env python3
"""
Quick setup verification test.
Checks if all modules can be imported and the configuration loads.
"""

import importlib
import sys
from pathlib import Path

import pytest

# Add src to path (go up to backend, then into src)
backend_dir = Path(__file__).parent.parent
sys.path.insert(0, str(backend_dir / "src"))

MODULES = [
    ("utils.config", "utils", ["load_config", "Config"]),
    ("utils.logger", "utils", ["setup_logger"]),
    ("models", "models", ["OracleId", "PointerState", "WellWaveFunction", "RunConfig", "EnsembleResult"]),
    ("circuits", "circuits", ["hadamard", "oracle_gate", "classify"]),
    ("spin_model", "spin_model", ["SpinPilotWave", "run_deutsch_spin"]),
    ("well_model", "well_model", ["run_deutsch_well", "oracle_schedule", "CoefficientTimeline"]),
    ("ensemble", "ensemble", ["sample_density", "equivariance_check", "born_frequencies"]),
    ("cli", "cli", ["main", "run_suites"]),
]


def check_import(package: str, names):
    module = importlib.import_module(package)
    missing = [name for name in names if not hasattr(module, name)]
    if missing:
        raise ImportError(f"missing {', '.join(missing)}")


@pytest.mark.parametrize("label,package,names", MODULES)
def test_imports(label, package, names):
    check_import(package, names)


def test_config_loads():
    from utils import load_config

    config = load_config()
    assert config.spin and config.well and config.ensemble
    assert config.defaults_for("spin")["dt"] == pytest.approx(0.001)


def main() -> int:
    print("🔍 Testing Pilot-Wave Deutsch Setup")
    print("=" * 60)
    print()

    print("Import Tests:")
    print("-" * 60)
    all_passed = True
    for label, package, names in MODULES:
        try:
            check_import(package, names)
            print(f"✅ PASS  {label}")
        except Exception as e:
            print(f"❌ FAIL  {label}")
            print(f"       Error: {e}")
            all_passed = False

    print()
    print("=" * 60)

    print("\nConfiguration Test:")
    print("-" * 60)
    try:
        from utils import load_config

        config = load_config()
        print("✅ Config loaded successfully")
        print(f"   Project root: {config.project_root}")
        print(f"   Outputs dir: {config.outputs_dir}")
        print(f"   Log dir: {config.log_dir}")
        print(f"   Log level: {config.log_level}")
    except Exception as e:
        print(f"❌ Config load failed: {e}")
        all_passed = False

    print()
    print("=" * 60)

    print("\n📊 Summary:")
    if all_passed:
        print("✅ All tests passed! Setup is correct.")
        print("\nNext steps:")
        print("  1. Run: pilotwave verify")
        print("  2. Run: pilotwave deutsch --model spin --oracle f1")
        return 0
    print("❌ Some tests failed. Please check the errors above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
