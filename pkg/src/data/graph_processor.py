# src/data/graph_processor.py
# Medidas sobre las topologías: grados, TTL estimado, conectividad

"""
PROPÓSITO:
-----------
Calcula la información que los escenarios necesitan de cada grafo:
- Resumen de grados (grado medio y λ usado para el TTL)
- Estimación del TTL: ⌈ln n / ln λ⌉
- Conversión a NetworkX para validación de conectividad y para el oráculo
  de inundación (bola BFS de radio TTL)

CONVENCIÓN DE λ:
----------------
El TTL automático usa λ = e/n (no el grado medio 2e/n): es la lectura que
reproduce los valores TTL publicados para 200 y 500 nodos. DegreeSummary
expone ambos valores.
"""

import math
from dataclasses import dataclass
from typing import Dict, Set

import networkx as nx
import numpy as np

from src.data.graph import Graph
from src.utils.calculations import techo_tolerante
from src.utils.validators import DomainError, InvalidParameterError, validar_entero, validar_real


@dataclass(frozen=True)
class DegreeSummary:
    """Resumen de grados; mean_degree_std = 2·lambda_ttl exactamente."""

    mean_degree_std: float
    lambda_ttl: float
    min_degree: int
    max_degree: int


def degree_summary(g: Graph) -> DegreeSummary:
    """
    Ejemplo:
        >>> degree_summary(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
        DegreeSummary(mean_degree_std=2.0, lambda_ttl=1.0, min_degree=2, max_degree=2)
    """
    if g.node_count < 1:
        raise InvalidParameterError("degree_summary requiere al menos un nodo")
    grados = np.asarray(g.degrees(), dtype=np.int64)
    lambda_ttl = g.edge_count / g.node_count
    return DegreeSummary(
        mean_degree_std=2 * lambda_ttl,
        lambda_ttl=lambda_ttl,
        min_degree=int(grados.min()),
        max_degree=int(grados.max()),
    )


def ttl_estimate(n: int, lam: float) -> int:
    """
    TTL = ⌈ln n / ln λ⌉.

    Args:
        n: número de nodos (>= 2)
        lam: λ > 1

    Raises:
        DomainError: λ <= 1 (la fórmula diverge) o n < 2

    Ejemplo:
        >>> ttl_estimate(200, 2.0), ttl_estimate(500, 2.0), ttl_estimate(16, 4.0)
        (8, 9, 2)
    """
    n = validar_entero(n, 'nodes')
    lam = validar_real(lam, 'lambda')
    if n < 2:
        raise DomainError(f"ttl_estimate requiere n >= 2, recibido {n}")
    if lam <= 1.0:
        raise DomainError(f"ttl_estimate requiere λ > 1, recibido {lam}")
    return techo_tolerante(math.log(n) / math.log(lam))


def ttl_automatico(g: Graph) -> int:
    """TTL del modo `ttl=auto`: λ = e/n."""
    return ttl_estimate(g.node_count, degree_summary(g).lambda_ttl)


def to_networkx(g: Graph) -> nx.Graph:
    grafo_nx = nx.Graph()
    grafo_nx.add_nodes_from(range(g.node_count))
    grafo_nx.add_edges_from(g.sorted_edges())
    return grafo_nx


def flooding_oracle(g: Graph, origen: int, ttl: int) -> Set[int]:
    """
    Nodos a distancia 1..ttl del origen (la bola BFS sin el propio origen).

    Es exactamente el conjunto de receptores de una inundación con v=1.
    """
    distancias = nx.single_source_shortest_path_length(to_networkx(g), origen, cutoff=ttl)
    return {nodo for nodo, d in distancias.items() if d >= 1}


def validar_grafo(g: Graph, verbose: bool = False) -> Dict:
    """
    Verifica la estructura del grafo y devuelve los problemas encontrados.

    Returns:
        dict con 'es_conexo', 'num_componentes', 'componente_principal',
        'nodos_aislados'
    """
    grafo_nx = to_networkx(g)
    problemas = {
        'es_conexo': g.node_count > 0 and nx.is_connected(grafo_nx),
        'num_componentes': nx.number_connected_components(grafo_nx),
        'componente_principal': max((len(c) for c in nx.connected_components(grafo_nx)), default=0),
        'nodos_aislados': len(g.isolated_nodes()),
    }

    if verbose:
        if problemas['es_conexo']:
            print(f"  ✓ Grafo conexo ({g.node_count} nodos, {g.edge_count} aristas)")
        else:
            print(f"  ⚠ El grafo tiene {problemas['num_componentes']} componentes conexos")
            print(f"    Componente principal: {problemas['componente_principal']} nodos")
            if problemas['nodos_aislados']:
                print(f"    Nodos aislados: {problemas['nodos_aislados']}")

    return problemas
