# src/data/graph_generator.py
# Generadores nativos de topologías aleatorias (Erdős–Rényi y Barabási–Albert)

"""
PROPÓSITO:
-----------
Genera las topologías de los testbeds sin depender de herramientas externas.
Ambos generadores son deterministas en la semilla: la misma semilla produce
exactamente el mismo conjunto de aristas.

1. gen_erdos_renyi(n, m, seed):
   Modelo G(n, m): exactamente m aristas distintas elegidas uniformemente.
   Muestreo por rechazo de pares aleatorios hasta reunir m aristas. Cuando m
   supera la mitad del máximo se muestrean las aristas AUSENTES y se toma el
   complemento (misma distribución uniforme, sin rechazos interminables).

2. gen_barabasi_albert(n, m0, m_attach, seed):
   Arranca de un grafo completo de m0 nodos; cada nodo nuevo se conecta a
   m_attach nodos existentes distintos con probabilidad proporcional al grado.
   Las colisiones (destino repetido) se vuelven a muestrear.
   Número de aristas: m0(m0-1)/2 + m_attach·(n-m0).
"""

from itertools import combinations
from typing import List, Set, Tuple

import numpy as np

from src.data.graph import Graph, normalizar_arista
from src.utils.validators import InvalidParameterError, validar_entero, validar_rango

TAMANO_LOTE = 4096


def max_aristas(n: int) -> int:
    return n * (n - 1) // 2


def _muestrear_pares(n: int, cantidad: int, rng: np.random.Generator) -> Set[Tuple[int, int]]:
    """Reúne `cantidad` pares no ordenados distintos por rechazo, en lotes."""
    elegidas: Set[Tuple[int, int]] = set()
    while len(elegidas) < cantidad:
        us = rng.integers(0, n, size=TAMANO_LOTE)
        vs = rng.integers(0, n, size=TAMANO_LOTE)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u == v:
                continue
            elegidas.add(normalizar_arista(u, v))
            if len(elegidas) == cantidad:
                break
    return elegidas


def gen_erdos_renyi(n: int, m: int, seed: int) -> Graph:
    """
    Grafo aleatorio G(n, m).

    Args:
        n: número de nodos (>= 1)
        m: número de aristas, 0 <= m <= n(n-1)/2
        seed: semilla entera no negativa

    Returns:
        Graph con exactamente n nodos y m aristas

    Raises:
        InvalidParameterError: m fuera de rango

    Ejemplo:
        >>> g = gen_erdos_renyi(200, 400, seed=1)
        >>> g.node_count, g.edge_count
        (200, 400)
    """
    n = validar_rango(validar_entero(n, 'nodes'), 1, None, 'nodes')
    m = validar_rango(validar_entero(m, 'edges'), 0, max_aristas(n), 'edges')
    seed = validar_rango(validar_entero(seed, 'seed'), 0, None, 'seed')

    rng = np.random.default_rng(seed)
    total = max_aristas(n)

    if m <= total - m:
        aristas = _muestrear_pares(n, m, rng)
    else:
        ausentes = _muestrear_pares(n, total - m, rng)
        aristas = {par for par in combinations(range(n), 2) if par not in ausentes}

    return Graph(n, frozenset(aristas))


def gen_barabasi_albert(n: int, m0: int, m_attach: int, seed: int) -> Graph:
    """
    Grafo libre de escala por enlace preferencial.

    Args:
        n: número total de nodos (m0 <= n)
        m0: tamaño del clique inicial
        m_attach: aristas por nodo nuevo, 1 <= m_attach <= m0
        seed: semilla entera no negativa

    Raises:
        InvalidParameterError: violación de 1 <= m_attach <= m0 <= n
    """
    n = validar_entero(n, 'nodes')
    m0 = validar_entero(m0, 'm0')
    m_attach = validar_entero(m_attach, 'm_attach')
    seed = validar_rango(validar_entero(seed, 'seed'), 0, None, 'seed')
    validar_rango(m_attach, 1, None, 'm_attach')
    validar_rango(m0, m_attach, None, 'm0')
    if n < m0:
        raise InvalidParameterError(f"'nodes' = {n} es menor que m0 = {m0}")

    rng = np.random.default_rng(seed)
    aristas: Set[Tuple[int, int]] = set(combinations(range(m0), 2))

    # Un nodo aparece en `extremos` una vez por cada arista incidente, así que
    # elegir un índice uniforme equivale a elegir con probabilidad ∝ grado.
    extremos: List[int] = [u for arista in sorted(aristas) for u in arista]

    for nuevo in range(m0, n):
        destinos: Set[int] = set()
        while len(destinos) < m_attach:
            if extremos:
                candidato = extremos[int(rng.integers(len(extremos)))]
            else:
                # clique inicial de un solo nodo: todos los grados son 0
                candidato = int(rng.integers(nuevo))
            destinos.add(candidato)
        for destino in sorted(destinos):
            aristas.add((destino, nuevo))
            extremos.extend((destino, nuevo))

    return Graph(n, frozenset(aristas))
