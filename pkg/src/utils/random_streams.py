"""
Flux pseudo-aléatoires à compteur, indexés par (graine, index).

Un tirage ne dépend que de la clé : `keyed_generator(seed, 17)` produit
toujours la même suite, quel que soit l'ordre des appels. `block_stream`
positionne en plus le compteur Philox, ce qui donne un accès direct au bloc
d'un pas de temps et permet de tirer plusieurs pas consécutifs d'un coup.
"""

import numpy as np

from errors import DomainError

_KEY_LIMIT = 2 ** 64
# un bloc Philox = 4 mots de 64 bits = 4 tirages uniformes
WORDS_PER_BLOCK = 4


def _check_key(seed: int, index: int) -> int:
    seed, index = int(seed), int(index)
    if not 0 <= seed < _KEY_LIMIT:
        raise DomainError(f"graine hors de [0, 2^64) : {seed}")
    if not 0 <= index < _KEY_LIMIT:
        raise DomainError(f"index hors de [0, 2^64) : {index}")
    return (seed << 64) | index


def keyed_generator(seed: int, index: int) -> np.random.Generator:
    """Générateur Philox dont la clé 128 bits est (seed, index)"""
    return np.random.Generator(np.random.Philox(key=_check_key(seed, index)))


def block_stream(seed: int, index: int, block: int) -> np.random.Generator:
    """Flux de clé (seed, index) démarrant au bloc de compteur `block`"""
    if int(block) < 0:
        raise DomainError(f"bloc de compteur négatif : {block}")
    return np.random.Generator(np.random.Philox(key=_check_key(seed, index), counter=int(block)))


def blocks_for(draws: int) -> int:
    """Nombre de blocs Philox couvrant `draws` tirages"""
    return max(1, -(-int(draws) // WORDS_PER_BLOCK))
