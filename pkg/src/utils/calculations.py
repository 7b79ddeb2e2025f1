# src/utils/calculations.py
# Funciones de cálculo compartidas: semillas derivadas, topes de carga, redondeos

"""
PROPÓSITO:
-----------
Centraliza operaciones numéricas pequeñas que usan varios módulos:

1. derivar_semilla(semilla_maestra, k):
   - Semilla del grafo k de un corpus, independiente del resto de grafos
   - blake2b de (semilla_maestra, k) truncado a 63 bits

2. techo_tolerante(x):
   - ⌈x⌉ tolerante al error de redondeo (2.0000000000000004 → 2)

3. calcular_tope_carga(n, L, delta):
   - Población máxima permitida por LP: ⌈(1+δ)·n/L⌉

4. media_segura(valores):
   - Media aritmética; 0.0 para listas vacías
"""

import hashlib
import math
from typing import Iterable

import numpy as np

TOLERANCIA_REDONDEO = 1e-9


def derivar_semilla(semilla_maestra: int, k: int) -> int:
    """
    Deriva la semilla del grafo k de un corpus.

    Ejemplo:
        >>> derivar_semilla(42, 0) == derivar_semilla(42, 0)
        True
    """
    h = hashlib.blake2b(digest_size=8)
    h.update((int(semilla_maestra) % 2**64).to_bytes(8, 'little', signed=False))
    h.update(int(k).to_bytes(8, 'little', signed=False))
    return int.from_bytes(h.digest(), 'little') >> 1


def techo_tolerante(x: float) -> int:
    redondeado = round(x)
    if abs(x - redondeado) < TOLERANCIA_REDONDEO:
        return int(redondeado)
    return math.ceil(x)


def calcular_tope_carga(n: int, num_lps: int, delta: float) -> int:
    """Población máxima de un LP tras cada ronda de migración."""
    return techo_tolerante((1.0 + delta) * n / num_lps)


def media_segura(valores: Iterable[float]) -> float:
    arreglo = np.fromiter(valores, dtype=float)
    if arreglo.size == 0:
        return 0.0
    return float(arreglo.mean())
