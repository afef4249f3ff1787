"""Chargement des fichiers de configuration YAML / JSON du projet."""

import json
from pathlib import Path
from typing import Any, Dict, Union

import yaml

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent


def resolve_path(path: Union[str, Path]) -> Path:
    """Résout un chemin relatif par rapport à la racine du projet"""
    path = Path(path)
    if path.is_absolute():
        return path
    return PROJECT_ROOT / path


def load_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    """Charge un fichier YAML (dictionnaire vide si le fichier est vide)"""
    with open(resolve_path(path), 'r', encoding='utf-8') as f:
        return yaml.safe_load(f) or {}


def load_json(path: Union[str, Path]) -> Any:
    with open(resolve_path(path), 'r', encoding='utf-8') as f:
        return json.load(f)
