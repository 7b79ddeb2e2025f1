# src/models/simulation_engine.py
# Motor de simulación por pasos de tiempo con entidades repartidas en LPs

"""
PROPÓSITO:
-----------
Ejecuta un protocolo de diseminación sobre un grafo durante `steps` pasos.
Cada nodo es una entidad; las entidades se reparten entre L procesos lógicos
(LPs) que se ejecutan en un pool de hilos y solo intercambian mensajes en la
barrera entre pasos.

PASO t:
-------
1. Entregar los mensajes con deliver_time = t en orden canónico
   (origin, seq, sender, dest), cada LP a sus entidades
2. Llamar al manejador por paso de cada entidad en id ascendente
3. Recoger los envíos con deliver_time = t + 1, contando intra/inter-LP
   según el mapa vigente
4. Si gaia está activo y t mod k_mig = 0, ronda de migración; las entregas
   de t + 1 ya usan el mapa nuevo

SEMÁNTICA INDEPENDIENTE DE LA PARTICIÓN:
----------------------------------------
- Los números aleatorios salen de flujos por entidad (EntityRng)
- Las entregas siguen un orden canónico global
- Los eventos de cada paso se ordenan por una clave que no depende del LP
Por eso las líneas G/R/D son idénticas con cualquier L, con o sin
migraciones y con cualquier número de hilos.

EJEMPLO DE USO:
---------------
from config.escenario import cargar_configuracion
from src.models.simulation_engine import run

config = cargar_configuracion(flags={'protocol': 'fixed', 'steps': 100, 'ttl': 4})
traza, stats = run(config, grafo)
print(stats.total_messages, stats.inter_lp_ratio)
"""

import io
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from operator import itemgetter
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple, Union

import numpy as np
import pandas as pd
from dotenv import dotenv_values

from config.costos import calcular_costo_migracion
from src.analysis.trace_format import TraceEvent, TraceWriter
from src.data.graph import Graph
from src.data.graph_processor import ttl_automatico
from src.models.clustering import InteractionLedger, partition_static, migration_round
from src.models.entity_rng import EntityRng
from src.models.envelope import Envelope, TipoMensaje
from src.models.protocols import Protocol, crear_protocolo
from src.utils.calculations import calcular_tope_carga, media_segura
from src.utils.validators import (
    InputError,
    InvalidParameterError,
    InvariantViolation,
    ModelError,
    validar_booleano,
    validar_entero,
    validar_real,
)


# ============================================================================
# ESTADÍSTICAS
# ============================================================================

@dataclass
class EngineStats:
    """Contadores de una ejecución; intra + inter = total en todo momento."""

    total_messages: int = 0
    intra_lp_messages: int = 0
    inter_lp_messages: int = 0
    control_messages: int = 0
    migrations: int = 0
    migration_cost_units: int = 0
    wct_seconds: float = 0.0
    lp_count: int = 1
    gaia: bool = False
    steps: int = 0
    label: str = ''
    serie_inter: List[float] = field(default_factory=list)
    poblaciones: List[List[int]] = field(default_factory=list)

    @property
    def inter_lp_ratio(self) -> float:
        if self.total_messages == 0:
            return 0.0
        return self.inter_lp_messages / self.total_messages

    def cuartiles_inter(self) -> Tuple[float, float]:
        """Media del cociente inter-LP en el primer y en el último cuartil de pasos."""
        if not self.serie_inter:
            return 0.0, 0.0
        partes = np.array_split(np.asarray(self.serie_inter, dtype=float), 4)
        return media_segura(partes[0]), media_segura(partes[-1])

    def como_diccionario(self) -> Dict[str, str]:
        return {
            'label': self.label,
            'lp_count': str(self.lp_count),
            'gaia': 'on' if self.gaia else 'off',
            'steps': str(self.steps),
            'total_messages': str(self.total_messages),
            'intra_lp_messages': str(self.intra_lp_messages),
            'inter_lp_messages': str(self.inter_lp_messages),
            'control_messages': str(self.control_messages),
            'inter_lp_ratio': repr(self.inter_lp_ratio),
            'migrations': str(self.migrations),
            'migration_cost_units': str(self.migration_cost_units),
            'wct_seconds': repr(float(self.wct_seconds)),
            'format_version': '1',
        }

    def serie_dataframe(self) -> pd.DataFrame:
        datos = {
            't': np.arange(len(self.serie_inter), dtype=np.int64),
            'inter_lp_ratio': np.asarray(self.serie_inter, dtype=float),
        }
        poblaciones = np.asarray(self.poblaciones, dtype=np.int64).reshape(len(self.serie_inter), -1) \
            if self.poblaciones else np.zeros((len(self.serie_inter), 0), dtype=np.int64)
        for lp in range(poblaciones.shape[1]):
            datos[f'lp{lp}'] = poblaciones[:, lp]
        return pd.DataFrame(datos)


def ruta_serie(ruta_stats: Union[str, Path]) -> Path:
    return Path(ruta_stats).with_suffix('.csv')


def guardar_stats(stats: EngineStats, ruta: Union[str, Path]) -> Path:
    """Escribe el resumen clave=valor en `ruta` y la serie en <ruta>.csv."""
    ruta = Path(ruta)
    contenido = ''.join(f'{k}={v}\n' for k, v in stats.como_diccionario().items())
    ruta.write_bytes(contenido.encode('utf-8'))
    stats.serie_dataframe().to_csv(ruta_serie(ruta), index=False)
    return ruta


def load_stats(ruta: Union[str, Path]) -> EngineStats:
    """
    Lee un archivo de estadísticas (y su serie CSV si existe).

    Raises:
        FileNotFoundError: el archivo no existe
        InputError: falta alguna clave obligatoria o tiene un valor inválido
    """
    ruta = Path(ruta)
    if not ruta.exists():
        raise FileNotFoundError(f"no se encontró el archivo de estadísticas {ruta}")
    valores = dotenv_values(ruta)
    try:
        stats = EngineStats(
            total_messages=validar_entero(valores.get('total_messages'), 'total_messages'),
            intra_lp_messages=validar_entero(valores.get('intra_lp_messages'), 'intra_lp_messages'),
            inter_lp_messages=validar_entero(valores.get('inter_lp_messages'), 'inter_lp_messages'),
            control_messages=validar_entero(valores.get('control_messages', 0), 'control_messages'),
            migrations=validar_entero(valores.get('migrations', 0), 'migrations'),
            migration_cost_units=validar_entero(valores.get('migration_cost_units', 0), 'migration_cost_units'),
            wct_seconds=validar_real(valores.get('wct_seconds'), 'wct_seconds'),
            lp_count=validar_entero(valores.get('lp_count'), 'lp_count'),
            gaia=validar_booleano(valores.get('gaia', 'off'), 'gaia'),
            steps=validar_entero(valores.get('steps', 0), 'steps'),
            label=valores.get('label') or ruta.stem,
        )
    except InvalidParameterError as e:
        raise InputError(f"{ruta}: {e}") from None

    serie = ruta_serie(ruta)
    if serie.exists():
        tabla = pd.read_csv(serie)
        stats.serie_inter = tabla['inter_lp_ratio'].astype(float).tolist()
        columnas = [c for c in tabla.columns if c.startswith('lp')]
        stats.poblaciones = tabla[columnas].astype(int).values.tolist()
    return stats


# ============================================================================
# CONTEXTO DE EJECUCIÓN DE UN LP
# ============================================================================

class ContextoLP:
    """
    Lo que ven los manejadores de las entidades de un LP durante el paso t.

    Acumula localmente envíos, eventos y contadores; el motor los combina en
    la barrera, así que no hace falta ningún bloqueo.
    """

    def __init__(self, t: int, asignacion: np.ndarray, node_count: int, verbosity: int):
        self.t = t
        self._asignacion = asignacion
        self._n = node_count
        self._verbosity = verbosity
        self.eventos: List[Tuple[tuple, TraceEvent]] = []
        self.envios: List[Envelope] = []
        self.conteos: Counter = Counter()
        self.total = 0
        self.intra = 0
        self.inter = 0
        self.control = 0
        self._indices: Counter = Counter()
        self._clave: tuple = ()
        self._k = 0

    def iniciar(self, fase: int, subclave: tuple) -> None:
        self._clave = (fase, subclave)
        self._k = 0

    def _registrar(self, evento: TraceEvent) -> None:
        self.eventos.append((self._clave + (self._k,), evento))
        self._k += 1

    def evento(self, kind: str, nodo: int, origin: int, seq: int, hops: int = None) -> None:
        self._registrar(TraceEvent(kind, self.t, nodo, origin, seq, hops))

    def send(self, remitente: int, dest: int, kind: TipoMensaje, origin: int, seq: int,
             ttl: int, hops: int, objetivo: Optional[int] = None) -> Envelope:
        """
        Encola un mensaje para el paso t + 1.

        Raises:
            ModelError: destino fuera de [0, n) (error del protocolo)
        """
        if not 0 <= dest < self._n:
            raise ModelError(f"la entidad {remitente} envió a un destino inexistente {dest}")
        indice = self._indices[remitente]
        self._indices[remitente] = indice + 1
        env = Envelope(kind, origin, seq, remitente, dest, self.t, self.t + 1,
                       ttl, hops, objetivo, indice)
        self.envios.append(env)

        self.total += 1
        if self._asignacion[remitente] == self._asignacion[dest]:
            self.intra += 1
        else:
            self.inter += 1
        self.conteos[(remitente, dest)] += 1

        if kind == TipoMensaje.STIMULUS:
            self.control += 1
            self._registrar(TraceEvent('C', self.t, remitente, dest=dest, target_origin=objetivo))
        elif self._verbosity >= 2:
            self._registrar(TraceEvent('S', self.t, remitente, origin, seq, dest=dest))
        return env


# ============================================================================
# MOTOR
# ============================================================================

class SimulationEngine:
    """
    Motor por pasos de tiempo con lookahead unitario.

    Args:
        config: ScenarioConfig efectiva
        graph: topología (al menos un nodo)
        protocol: instancia de Protocol (por defecto la de config.protocol)
        ttl: TTL explícito; por defecto config.ttl o ⌈ln n / ln(e/n)⌉
    """

    def __init__(self, config, graph: Graph, protocol: Protocol = None, ttl: int = None):
        if graph.node_count < 1:
            raise InvalidParameterError("el grafo debe tener al menos un nodo")
        self.config = config
        self.graph = graph
        self.protocol = protocol if protocol is not None else crear_protocolo(config)
        if ttl is None:
            ttl = config.ttl_fijo()
        self.ttl = ttl if ttl is not None else ttl_automatico(graph)

        n = graph.node_count
        self.lp_map = partition_static(n, config.lp)
        self.ledger = InteractionLedger(n, config.window)
        self.tope = calcular_tope_carga(n, config.lp, config.delta)
        self.estados = [
            self.protocol.crear_estado(i, graph.neighbors(i), EntityRng(config.seed, i),
                                       self.ttl, n, config.steps)
            for i in range(n)
        ]
        self.stats = EngineStats(lp_count=config.lp, gaia=config.gaia, steps=config.steps,
                                 label=etiqueta_configuracion(config.lp, config.gaia))
        self.pendientes: List[Envelope] = []

    def cabecera(self) -> Dict[str, str]:
        return self.config.como_cabecera(self.graph.node_count, self.graph.edge_count, self.ttl)

    # --- ejecución --------------------------------------------------------

    def _ejecutar_lp(self, t: int, lp: int, entregas: List[Envelope]) -> ContextoLP:
        ctx = ContextoLP(t, self.lp_map.asignacion, self.graph.node_count, self.config.verbosity)
        for env in entregas:
            ctx.iniciar(0, env.clave_canonica())
            self.protocol.on_receive(self.estados[env.dest], env, t, ctx)
        for entidad in self.lp_map.entidades_de(lp):
            ctx.iniciar(1, (entidad,))
            self.protocol.on_timestep(self.estados[entidad], t, ctx)
        return ctx

    def paso(self, t: int, pool: Optional[ThreadPoolExecutor] = None) -> List[TraceEvent]:
        """Ejecuta el paso t y devuelve sus eventos en orden canónico."""
        L = self.lp_map.lp_count
        self.ledger.iniciar_paso(t)

        por_lp: List[List[Envelope]] = [[] for _ in range(L)]
        for env in sorted(self.pendientes, key=Envelope.clave_canonica):
            por_lp[self.lp_map.lp_de(env.dest)].append(env)

        if pool is not None:
            contextos = list(pool.map(lambda lp: self._ejecutar_lp(t, lp, por_lp[lp]), range(L)))
        else:
            contextos = [self._ejecutar_lp(t, lp, por_lp[lp]) for lp in range(L)]

        # barrera
        eventos: List[Tuple[tuple, TraceEvent]] = []
        envios: List[Envelope] = []
        conteos: Counter = Counter()
        total = intra = inter = 0
        for ctx in contextos:
            eventos.extend(ctx.eventos)
            envios.extend(ctx.envios)
            conteos.update(ctx.conteos)
            total += ctx.total
            intra += ctx.intra
            inter += ctx.inter
            self.stats.control_messages += ctx.control
        if intra + inter != total:
            raise InvariantViolation(f"paso {t}: intra ({intra}) + inter ({inter}) != total ({total})")

        eventos.sort(key=itemgetter(0))
        ordenados = [evento for _, evento in eventos]

        self.pendientes = envios
        self.ledger.registrar(t, conteos)
        self.stats.total_messages += total
        self.stats.intra_lp_messages += intra
        self.stats.inter_lp_messages += inter
        self.stats.serie_inter.append(inter / total if total else 0.0)

        if self.config.gaia and t % self.config.k_mig == 0:
            ordenados.extend(self._migrar(t))

        self.stats.poblaciones.append(self.lp_map.poblaciones().tolist())
        return ordenados

    def _migrar(self, t: int) -> List[TraceEvent]:
        interacciones = self.ledger.interacciones_por_entidad()
        movimientos = migration_round(self.ledger, self.lp_map, self.config.delta, self.config.theta)
        self.lp_map.verificar_tope(self.tope)

        eventos = []
        for entidad, origen, destino in movimientos:
            vecinos, vistos, adaptativas = self.estados[entidad].componentes_estado()
            self.stats.migration_cost_units += calcular_costo_migracion(
                vecinos, vistos, int(interacciones[entidad]), adaptativas
            )
            eventos.append(TraceEvent('M', t, entidad, from_lp=origen, to_lp=destino))
        self.stats.migrations += len(movimientos)
        return eventos

    def ejecutar(self, writer: TraceWriter = None) -> EngineStats:
        """Ejecuta todos los pasos; el WCT excluye el tiempo de escritura de la traza."""
        usar_pool = self.config.workers > 1 and self.lp_map.lp_count > 1
        pool = ThreadPoolExecutor(max_workers=self.config.workers) if usar_pool else None
        escritura_previa = writer.segundos_escritura if writer is not None else 0.0
        inicio = time.perf_counter()
        try:
            for t in range(self.config.steps):
                eventos = self.paso(t, pool)
                if writer is not None:
                    writer.escribir_eventos(eventos)
        finally:
            if pool is not None:
                pool.shutdown()
        transcurrido = time.perf_counter() - inicio
        if writer is not None:
            transcurrido -= writer.segundos_escritura - escritura_previa
        self.stats.wct_seconds = max(transcurrido, 0.0)
        return self.stats


def etiqueta_configuracion(lp: int, gaia: bool) -> str:
    return f"lp{lp}{'-gaia' if gaia else ''}"


def run(config, graph: Graph, protocol: Protocol = None, salida: TextIO = None,
        ttl: int = None) -> Tuple[Optional[str], EngineStats]:
    """
    Ejecuta un escenario completo sobre un grafo.

    Args:
        config: ScenarioConfig
        graph: topología
        protocol: instancia de protocolo (por defecto según config.protocol)
        salida: stream donde escribir la traza; si es None se devuelve como texto
        ttl: TTL explícito (por defecto el de la configuración)

    Returns:
        (traza como texto o None si se escribió en `salida`, EngineStats)

    Raises:
        ConfigurationError: protocolo desconocido
        ModelError: un protocolo envió a un id inexistente
        InvariantViolation: tope de carga o contadores inconsistentes
    """
    motor = SimulationEngine(config, graph, protocol, ttl)
    destino = salida if salida is not None else io.StringIO()
    writer = TraceWriter(destino)
    writer.escribir_cabecera(motor.cabecera())
    stats = motor.ejecutar(writer)
    return (destino.getvalue() if salida is None else None), stats
