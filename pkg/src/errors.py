"""Exceptions du laboratoire Vicsek"""


class VicsekError(Exception):
    """Racine de toutes les erreurs du projet"""


class DomainError(VicsekError, ValueError):
    """Argument hors du domaine d'une opération (sommet inconnu, tailles incompatibles...)"""


class ConfigurationError(VicsekError):
    """Combinaison de paramètres incohérente (mode géométrique sans positions...)"""


class ScenarioError(ConfigurationError):
    """Document de scénario invalide ; le message liste chaque chemin fautif"""
