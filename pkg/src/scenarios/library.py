"""Bibliothèque de scénarios livrés (config/scenarios/*.json)."""

from pathlib import Path
from typing import List, NamedTuple, Optional, Union

from config import SCENARIO_DIR
from errors import ScenarioError
from scenarios.schema import Scenario, parse_scenario


class ScenarioEntry(NamedTuple):
    name: str
    description: str
    exercises: str
    path: Path


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"lecture impossible de {path} : {e.strerror}") from e
    try:
        return parse_scenario(text)
    except ScenarioError as e:
        raise ScenarioError(f"{path} : {e}") from e


def scenario_files(directory: Union[str, Path]) -> List[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise ScenarioError(f"répertoire de scénarios introuvable : {directory}")
    return sorted(directory.glob("*.json"))


def list_scenarios(directory: Optional[Union[str, Path]] = None) -> List[ScenarioEntry]:
    """Scénarios de la bibliothèque triés par nom"""
    entries = []
    for path in scenario_files(directory or SCENARIO_DIR):
        scn = load_scenario(path)
        entries.append(ScenarioEntry(scn.name, scn.description, scn.exercises, path))
    return sorted(entries, key=lambda e: e.name)


def resolve_scenario(reference: Union[str, Path],
                     directory: Optional[Union[str, Path]] = None) -> Scenario:
    """Chemin de fichier s'il existe, sinon nom d'un scénario de la bibliothèque"""
    path = Path(reference)
    if path.is_file():
        return load_scenario(path)

    for entry in list_scenarios(directory):
        if entry.name == str(reference):
            return load_scenario(entry.path)
    raise ScenarioError(f"scénario inconnu : {reference!r} (ni fichier, ni nom de la bibliothèque)")
