# src/data/graph.py
# Tipo Graph: grafo simple no dirigido e inmutable

"""
PROPÓSITO:
-----------
Representa la topología simulada (el overlay). Los nodos son 0..n-1 y las
aristas pares no ordenados {u, v} con u ≠ v, guardados como (min, max).

Un Graph es inmutable después de construido, así que puede compartirse entre
hilos sin copias (generación de corpus en paralelo, LPs del motor).
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from src.utils.validators import InvalidParameterError

Arista = Tuple[int, int]


def normalizar_arista(u: int, v: int) -> Arista:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Grafo simple no dirigido.

    Atributos:
        node_count: número de nodos n (los ids válidos son 0..n-1)
        edges: conjunto de aristas normalizadas (u < v)
        etiquetas: ids originales por nodo cuando el grafo fue importado
                   (None si los ids ya eran 0..n-1)
    """

    node_count: int
    edges: FrozenSet[Arista]
    etiquetas: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    _adyacencia: Tuple[Tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.node_count < 0:
            raise InvalidParameterError(f"node_count = {self.node_count} debe ser >= 0")

        vecinos: Dict[int, list] = {u: [] for u in range(self.node_count)}
        for u, v in self.edges:
            if u == v:
                raise InvalidParameterError(f"auto-lazo en el nodo {u}")
            if u > v:
                raise InvalidParameterError(f"arista ({u}, {v}) no normalizada")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InvalidParameterError(
                    f"arista ({u}, {v}) fuera del rango de nodos [0, {self.node_count})"
                )
            vecinos[u].append(v)
            vecinos[v].append(u)

        if self.etiquetas is not None and len(self.etiquetas) != self.node_count:
            raise InvalidParameterError("etiquetas debe tener una entrada por nodo")

        object.__setattr__(
            self,
            '_adyacencia',
            tuple(tuple(sorted(vecinos[u])) for u in range(self.node_count)),
        )

    @classmethod
    def from_edges(cls, node_count: int, aristas: Iterable[Arista],
                   etiquetas: Optional[Tuple[str, ...]] = None) -> 'Graph':
        """
        Construye el grafo normalizando cada par.

        Raises:
            InvalidParameterError: auto-lazos, aristas duplicadas o ids fuera de rango
        """
        normalizadas = set()
        for u, v in aristas:
            arista = normalizar_arista(int(u), int(v))
            if arista in normalizadas:
                raise InvalidParameterError(f"arista duplicada {arista}")
            normalizadas.add(arista)
        return cls(node_count, frozenset(normalizadas), etiquetas)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> Tuple[int, ...]:
        """Vecinos de u en orden ascendente."""
        return self._adyacencia[u]

    def degree(self, u: int) -> int:
        return len(self._adyacencia[u])

    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(vs) for vs in self._adyacencia)

    def sorted_edges(self) -> Tuple[Arista, ...]:
        return tuple(sorted(self.edges))

    def isolated_nodes(self) -> Tuple[int, ...]:
        return tuple(u for u, vs in enumerate(self._adyacencia) if not vs)
