# src/models/clustering.py
# Asignación de entidades a LPs y agrupamiento adaptativo (migraciones)

"""
PROPÓSITO:
-----------
Las entidades (nodos simulados) se reparten entre L procesos lógicos (LPs).
Durante la ejecución se audita con quién se comunica cada entidad y, cada
k_mig pasos, las entidades que hablan mucho más con otro LP que con el propio
migran hacia él, siempre que el LP destino no supere el tope de carga.

COMPONENTES:
------------
1. LpMap: asignación entidad → LP (arreglo numpy de enteros)
2. partition_static(n, L): reparto inicial por bloques, i → ⌊i·L/n⌋
3. InteractionLedger: ventana circular de W pasos con los envíos
   (entidad, destino); los totales por LP se calculan con el mapa vigente,
   así que una migración re-etiqueta los conteos automáticamente
4. migration_round: heurística de atracción con umbral θ y tope
   ⌈(1+δ)·n/L⌉

REGLA DE MIGRACIÓN:
-------------------
Para cada entidad i con totales c_i(ℓ) en la ventana:
    home = LP actual, best = argmax_{ℓ≠home} c_i(ℓ) (empates → menor id)
    se propone i → best si c_i(best) > θ·c_i(home)
Las propuestas se aplican por ganancia c_i(best) − c_i(home) descendente
(empates → menor id de entidad), cada una solo si el LP destino queda dentro
del tope.
"""

from collections import Counter
from typing import List, Tuple

import numpy as np

from src.utils.calculations import calcular_tope_carga
from src.utils.validators import InvalidParameterError, InvariantViolation, validar_rango

Migracion = Tuple[int, int, int]


class LpMap:
    """Asignación de n entidades a L procesos lógicos."""

    def __init__(self, asignacion, lp_count: int):
        self.asignacion = np.asarray(asignacion, dtype=np.int64).copy()
        self.lp_count = int(lp_count)
        validar_rango(self.lp_count, 1, None, 'lp')
        if self.asignacion.size and (self.asignacion.min() < 0 or self.asignacion.max() >= self.lp_count):
            raise InvalidParameterError(f"asignación con LPs fuera de [0, {self.lp_count})")

    @property
    def n(self) -> int:
        return int(self.asignacion.size)

    def lp_de(self, entidad: int) -> int:
        return int(self.asignacion[entidad])

    def poblaciones(self) -> np.ndarray:
        return np.bincount(self.asignacion, minlength=self.lp_count)

    def entidades_de(self, lp: int) -> List[int]:
        """Entidades del LP en orden ascendente."""
        return np.flatnonzero(self.asignacion == lp).tolist()

    def mover(self, entidad: int, destino: int) -> None:
        self.asignacion[entidad] = destino

    def verificar_tope(self, tope: int) -> None:
        maximo = int(self.poblaciones().max()) if self.n else 0
        if maximo > tope:
            raise InvariantViolation(
                f"un LP tiene {maximo} entidades y el tope de carga es {tope}"
            )


def partition_static(n: int, L: int) -> LpMap:
    """
    Reparto por bloques: la entidad i va al LP ⌊i·L/n⌋.

    Ejemplo:
        >>> partition_static(4, 2).asignacion.tolist()
        [0, 0, 1, 1]
    """
    validar_rango(L, 1, None, 'lp')
    validar_rango(n, 0, None, 'nodes')
    ids = np.arange(n, dtype=np.int64)
    return LpMap((ids * L) // max(n, 1), L)


class InteractionLedger:
    """
    Ventana circular de los últimos W pasos de envíos por (entidad, destino).

    Cada ranura guarda un Counter; al empezar el paso t se vacía la ranura
    t % W, con lo que los envíos de hace W pasos o más quedan descartados.
    """

    def __init__(self, n: int, window: int):
        self.n = n
        self.window = validar_rango(window, 1, None, 'window')
        self._ranuras: List[Counter] = [Counter() for _ in range(window)]

    def iniciar_paso(self, t: int) -> None:
        self._ranuras[t % self.window].clear()

    def registrar(self, t: int, conteos: Counter) -> None:
        """Suma los envíos (remitente, destino) → cantidad del paso t."""
        self._ranuras[t % self.window].update(conteos)

    def _arreglos(self):
        total = Counter()
        for ranura in self._ranuras:
            total.update(ranura)
        if not total:
            vacio = np.zeros(0, dtype=np.int64)
            return vacio, vacio, vacio
        pares = np.array(list(total.keys()), dtype=np.int64)
        cantidades = np.fromiter(total.values(), dtype=np.int64, count=len(total))
        return pares[:, 0], pares[:, 1], cantidades

    def totales_por_lp(self, lp_map: LpMap) -> np.ndarray:
        """Matriz (n, L) con los envíos de cada entidad hacia cada LP."""
        origenes, destinos, cantidades = self._arreglos()
        matriz = np.zeros((self.n, lp_map.lp_count), dtype=np.int64)
        np.add.at(matriz, (origenes, lp_map.asignacion[destinos]), cantidades)
        return matriz

    def interacciones_por_entidad(self) -> np.ndarray:
        """Contadores vivos (pares distintos) por entidad remitente."""
        origenes, _, _ = self._arreglos()
        return np.bincount(origenes, minlength=self.n)


def migration_round(ledger: InteractionLedger, lp_map: LpMap, delta: float, theta: float) -> List[Migracion]:
    """
    Evalúa y aplica una ronda de migraciones sobre `lp_map`.

    Returns:
        Lista de (entidad, LP origen, LP destino) en el orden aplicado.
        Una lista vacía es un resultado válido.
    """
    L = lp_map.lp_count
    n = lp_map.n
    if L == 1 or n == 0:
        return []

    matriz = ledger.totales_por_lp(lp_map)
    filas = np.arange(n)
    home = lp_map.asignacion.copy()
    c_home = matriz[filas, home]

    otros = matriz.copy()
    otros[filas, home] = -1
    best = np.argmax(otros, axis=1)
    c_best = otros[filas, best]

    candidatas = np.flatnonzero(c_best > theta * c_home)
    if candidatas.size == 0:
        return []

    orden = sorted(candidatas.tolist(), key=lambda i: (-(int(c_best[i]) - int(c_home[i])), i))
    tope = calcular_tope_carga(n, L, delta)
    poblaciones = lp_map.poblaciones()

    aplicadas: List[Migracion] = []
    for entidad in orden:
        origen, destino = int(home[entidad]), int(best[entidad])
        if poblaciones[destino] + 1 > tope:
            continue
        poblaciones[destino] += 1
        poblaciones[origen] -= 1
        lp_map.mover(entidad, destino)
        aplicadas.append((entidad, origen, destino))

    return aplicadas
