# src/config.py
from pathlib import Path
from dotenv import load_dotenv
import os

from utils.config_loader import load_yaml, resolve_path

# Chargement du .env
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(env_path)

# Valeurs par défaut depuis config/simulation_config.yml
_defaults = load_yaml("config/simulation_config.yml")
_tolerances = _defaults.get("tolerances", {})

# Seuils numériques depuis .env ou valeurs par défaut
ENVELOPE_TOLERANCE = float(os.getenv("VICSEK_ENVELOPE_TOLERANCE", _tolerances.get("envelope", 1e-12)))
BOUNDARY_TOLERANCE = float(os.getenv("VICSEK_BOUNDARY_TOLERANCE", _tolerances.get("boundary", 1e-12)))
CONSENSUS_TOLERANCE = float(os.getenv("VICSEK_CONSENSUS_TOLERANCE", _tolerances.get("consensus", 1e-9)))
TAIL_FRACTION = float(os.getenv("VICSEK_TAIL_FRACTION", _defaults.get("analysis", {}).get("tail_fraction", 0.5)))

# Sorties
OUTPUT_DIR = os.getenv("VICSEK_OUTPUT_DIR", _defaults.get("output", {}).get("directory", "out"))
FLOAT_FORMAT = _defaults.get("output", {}).get("float_format", "%.17g")

# Bibliothèque de scénarios
SCENARIO_DIR = resolve_path(os.getenv("VICSEK_SCENARIO_DIR", _defaults.get("library", {}).get("directory", "config/scenarios")))
