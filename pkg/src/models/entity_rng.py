# src/models/entity_rng.py
# Flujos aleatorios por entidad basados en contador

"""
PROPÓSITO:
-----------
Cada entidad tiene su propio flujo de números aleatorios, derivado solo de
(semilla maestra, id de entidad). Ningún valor depende del LP donde vive la
entidad, del hilo que la ejecuta ni de las migraciones.

Dos formas de sortear:

1. draw(propósito): flujo con contador por (entidad, propósito).
   - 'gen': una extracción por paso para decidir si se genera un mensaje
   - 'stim': elección de vecino aleatorio para un estímulo

2. draw_keyed(propósito, *clave): extracción sin estado para una clave.
   - Reenvío: ('fwd', origin, seq, vecino). La misma decisión de reenvío se
     compara siempre contra el mismo número, sea cual sea la probabilidad
     usada, por lo que subir v solo puede convertir "no reenviar" en
     "reenviar".

Cada número es blake2b(semilla, entidad, propósito, contador) truncado a 53
bits y escalado a [0, 1).
"""

import hashlib
from collections import Counter
from typing import Sequence

_ESCALA = 2.0 ** -53


def _bytes(valor: int) -> bytes:
    return int(valor).to_bytes(8, 'little', signed=False)


def _base(seed: int, entity: int):
    h = hashlib.blake2b(digest_size=8)
    h.update(_bytes(seed))
    h.update(_bytes(entity))
    return h


def _a_unitario(h) -> float:
    return (int.from_bytes(h.digest(), 'little') >> 11) * _ESCALA


def entity_rng_draw(seed: int, entity: int, purpose: str, index: int) -> float:
    """
    Extracción número `index` del flujo (seed, entity, purpose), en [0, 1).

    Ejemplo:
        >>> entity_rng_draw(42, 3, 'gen', 0) == entity_rng_draw(42, 3, 'gen', 0)
        True
    """
    h = _base(seed, entity)
    h.update(purpose.encode('ascii') + b'\x00')
    h.update(_bytes(index))
    return _a_unitario(h)


class EntityRng:
    """Generador de una entidad; cada propósito avanza su propio contador."""

    __slots__ = ('seed', 'entity', '_base', '_contadores')

    def __init__(self, seed: int, entity: int):
        self.seed = seed
        self.entity = entity
        self._base = _base(seed, entity)
        self._contadores: Counter = Counter()

    def draw(self, purpose: str) -> float:
        indice = self._contadores[purpose]
        self._contadores[purpose] = indice + 1
        h = self._base.copy()
        h.update(purpose.encode('ascii') + b'\x00')
        h.update(_bytes(indice))
        return _a_unitario(h)

    def draw_keyed(self, purpose: str, *clave: int) -> float:
        h = self._base.copy()
        h.update(purpose.encode('ascii') + b'\x01')
        for parte in clave:
            h.update(_bytes(parte))
        return _a_unitario(h)

    def choice(self, purpose: str, opciones: Sequence):
        """Elemento uniforme de `opciones` usando una extracción de `purpose`."""
        indice = int(self.draw(purpose) * len(opciones))
        return opciones[min(indice, len(opciones) - 1)]

    def draws_realizados(self, purpose: str) -> int:
        return self._contadores[purpose]
