"""Configuration management for the simulator."""

import os
import yaml
from pathlib import Path
from typing import Any, Dict, Optional
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

OUTPUT_DIR_ENV = "PILOTWAVE_OUTPUT_DIR"


class Config:
    """Central configuration management."""

    def __init__(self, config_file: Optional[Path] = None):
        self.project_root = Path(__file__).parent.parent.parent
        self.config_dir = self.project_root / "config"
        self.config_file = Path(config_file) if config_file else self.config_dir / "simulation_config.yaml"

        # Load configuration file
        self.settings = self._load_yaml(self.config_file)

        self.spin = self.settings.get("spin", {})
        self.well = self.settings.get("well", {})
        self.ensemble = self.settings.get("ensemble", {})
        self.output = self.settings.get("output", {})

        # Environment variables
        default_output = self.output.get("directory", str(self.project_root / "outputs"))
        self.outputs_dir = Path(os.getenv(OUTPUT_DIR_ENV, default_output))

        # Logging
        logging_settings = self.settings.get("logging", {})
        self.log_level = os.getenv("LOG_LEVEL", logging_settings.get("level", "INFO"))
        self.log_dir = self.outputs_dir / "logs"

    def _load_yaml(self, file_path: Path) -> Dict[str, Any]:
        """Load YAML configuration file."""
        if not file_path.exists():
            return {}
        with open(file_path, 'r') as f:
            return yaml.safe_load(f) or {}

    def defaults_for(self, model: str) -> Dict[str, Any]:
        """
        Flatten the defaults relevant to one model into RunConfig field names.

        Args:
            model: "spin" or "well"

        Returns:
            Dictionary of RunConfig fields taken from the configuration file
        """
        merged: Dict[str, Any] = {}
        merged.update(self.ensemble)
        merged.update(self.spin if model == "spin" else self.well)
        merged["output_dir"] = str(self.outputs_dir)
        return merged


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Load a flat key/value run configuration file.

    Args:
        path: YAML file whose keys mirror RunConfig field names

    Returns:
        Mapping of field name to value
    """
    with open(path, 'r') as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Config file {path} must contain a key/value mapping")
    nested = [key for key, value in data.items() if isinstance(value, dict)]
    if nested:
        raise ValueError(f"Config file {path} must be flat; nested keys: {', '.join(nested)}")
    return data


# Global configuration instance
config = Config()


def load_config() -> Config:
    """Load and return the global configuration."""
    return config
