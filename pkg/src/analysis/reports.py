# src/analysis/reports.py
# Análisis de trazas y estadísticas: diseminación, integridad y speedup

"""
PROPÓSITO:
-----------
Convierte trazas y estadísticas de ejecución en métricas:

1. dissemination_report(eventos, n):
   - Cobertura por mensaje: receptores distintos / (n − 1)
   - Mensajes entregados (R), duplicados (D), histograma de saltos
   - Mensajes de control (líneas C)

2. aggregate_corpus(reportes):
   - Media no ponderada sobre los grafos del corpus (cada medida se refiere
     al corpus completo, no a un grafo)

3. check_integrity(eventos, metadata):
   - Integridad referencial, R único por nodo y mensaje, cota de TTL,
     tiempo no decreciente y conservación de envíos cuando hay líneas S

4. speedup_report(ejecuciones):
   - speedup = WCT(secuencial) / WCT(configuración)

Todos los análisis recorren los eventos en una sola pasada. Un mensaje deja
de ocupar memoria cuando el tiempo de la traza supera su generación + ttl + 1,
así que la memoria depende del tamaño de la ventana y no de la longitud de la
traza (salvo la cobertura por mensaje, que solo se guarda si se pide).
"""

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, TextIO, Tuple, Union

import pandas as pd

from src.analysis.trace_format import TraceEvent, TraceParser
from src.utils.calculations import media_segura
from src.utils.validators import InputError, IntegrityError

MensajeId = Tuple[int, int]


# ============================================================================
# DISEMINACIÓN
# ============================================================================

@dataclass
class DisseminationReport:
    """
    Métricas de diseminación de una ejecución (un grafo).

    `coverage` guarda la cobertura de cada mensaje solo si se pidió
    (por_mensaje=True); la media se acumula siempre.
    """

    node_count: int
    coverage: Dict[MensajeId, float] = field(default_factory=dict)
    delivered: int = 0
    duplicates: int = 0
    generated: int = 0
    control_messages: int = 0
    hop_histogram: Counter = field(default_factory=Counter)
    label: str = ''
    suma_cobertura: float = 0.0
    mensajes_cerrados: int = 0

    def registrar_cobertura(self, mensaje: MensajeId, receptores: int, por_mensaje: bool) -> None:
        denominador = self.node_count - 1
        cobertura = receptores / denominador if denominador > 0 else 0.0
        self.suma_cobertura += cobertura
        self.mensajes_cerrados += 1
        if por_mensaje:
            self.coverage[mensaje] = cobertura

    @property
    def mean_coverage(self) -> float:
        if self.mensajes_cerrados == 0:
            return 0.0
        return self.suma_cobertura / self.mensajes_cerrados

    @property
    def data_receptions(self) -> int:
        return self.delivered + self.duplicates

    @property
    def mean_hops(self) -> float:
        total = sum(self.hop_histogram.values())
        if total == 0:
            return 0.0
        return sum(h * c for h, c in self.hop_histogram.items()) / total

    def como_diccionario(self) -> Dict[str, str]:
        return {
            'label': self.label,
            'n': str(self.node_count),
            'generated': str(self.generated),
            'delivered': str(self.delivered),
            'duplicates': str(self.duplicates),
            'control_messages': str(self.control_messages),
            'mean_coverage': repr(self.mean_coverage),
            'mean_hops': repr(self.mean_hops),
        }

    def tabla_cobertura(self) -> pd.DataFrame:
        filas = [
            {'graph': self.label, 'origin': origen, 'seq': seq, 'coverage': cobertura}
            for (origen, seq), cobertura in sorted(self.coverage.items())
        ]
        return pd.DataFrame(filas, columns=['graph', 'origin', 'seq', 'coverage'])

    def tabla_saltos(self) -> pd.DataFrame:
        filas = [{'graph': self.label, 'hops': h, 'count': c}
                 for h, c in sorted(self.hop_histogram.items())]
        return pd.DataFrame(filas, columns=['graph', 'hops', 'count'])


class VentanaMensajes:
    """
    Mensajes que todavía pueden aparecer en la traza.

    Cada salto tarda exactamente un paso, así que un mensaje generado en t_g
    solo aparece en líneas R/D/S hasta t_g + ttl. Cuando el tiempo de la traza
    pasa de t_g + ttl + 1 el mensaje se cierra y sale de memoria. Los seq de
    cada origen son crecientes: el último seq por origen basta para distinguir
    un mensaje cerrado de uno que nunca se generó. Sin ttl no se cierra nada
    hasta el final.
    """

    def __init__(self, ttl: Optional[int] = None):
        self.ttl = ttl
        self.vivos: Dict[MensajeId, Tuple[int, Set[int]]] = {}
        self.ultimo_seq: Dict[int, int] = {}

    def abrir(self, mensaje: MensajeId, t: int) -> bool:
        """Registra un G; False si su seq no supera al último del origen."""
        origen, seq = mensaje
        nuevo = seq > self.ultimo_seq.get(origen, -1)
        if nuevo:
            self.ultimo_seq[origen] = seq
        self.vivos.setdefault(mensaje, (t, set()))
        return nuevo

    def receptores(self, mensaje: MensajeId) -> Optional[Set[int]]:
        entrada = self.vivos.get(mensaje)
        return None if entrada is None else entrada[1]

    def cerrado(self, mensaje: MensajeId) -> bool:
        origen, seq = mensaje
        return mensaje not in self.vivos and seq <= self.ultimo_seq.get(origen, -1)

    def avanzar(self, t: int) -> List[Tuple[MensajeId, Set[int]]]:
        """Cierra los mensajes que ya no pueden aparecer en el paso t."""
        cerrados = []
        if self.ttl is None:
            return cerrados
        while self.vivos:
            mensaje, (t_g, receptores) = next(iter(self.vivos.items()))
            if t <= t_g + self.ttl + 1:
                break
            del self.vivos[mensaje]
            cerrados.append((mensaje, receptores))
        return cerrados

    def cerrar_todos(self) -> List[Tuple[MensajeId, Set[int]]]:
        cerrados = [(mensaje, receptores) for mensaje, (_, receptores) in self.vivos.items()]
        self.vivos.clear()
        return cerrados


def _ttl_de(metadata: Mapping[str, str]) -> Optional[int]:
    return int(metadata['ttl']) if metadata.get('ttl', '').isdigit() else None


def dissemination_report(eventos: Iterable[TraceEvent], n: int, label: str = '',
                         ttl: Optional[int] = None, por_mensaje: bool = True) -> DisseminationReport:
    """
    Agrega las métricas de diseminación de una ejecución completa.

    Args:
        eventos: eventos de la traza (un TraceParser aporta el ttl de su cabecera)
        n: nodos del grafo
        ttl: cota de saltos; permite cerrar los mensajes a medida que avanza el tiempo
        por_mensaje: conservar la cobertura de cada mensaje en `coverage`

    Raises:
        IntegrityError: un R o D referencia un mensaje sin evento G previo

    Ejemplo:
        reporte = dissemination_report(parse_trace(texto), n=200)
        print(reporte.delivered, reporte.mean_coverage)
    """
    if ttl is None and isinstance(eventos, TraceParser):
        ttl = _ttl_de(eventos.leer_cabecera())
    ventana = VentanaMensajes(ttl)
    reporte = DisseminationReport(node_count=n, label=label)
    t_actual = -1

    for evento in eventos:
        if evento.t > t_actual:
            t_actual = evento.t
            for mensaje, receptores in ventana.avanzar(t_actual):
                reporte.registrar_cobertura(mensaje, len(receptores), por_mensaje)

        kind = evento.kind
        if kind == 'G':
            ventana.abrir(evento.mensaje, evento.t)
            reporte.generated += 1
        elif kind in ('R', 'D'):
            receptores = ventana.receptores(evento.mensaje)
            if receptores is None:
                motivo = 'después de cerrado' if ventana.cerrado(evento.mensaje) else 'sin G previo'
                raise IntegrityError(
                    f"{kind} en t={evento.t} referencia el mensaje "
                    f"{evento.origin}:{evento.seq} {motivo}"
                )
            if kind == 'R':
                receptores.add(evento.node)
                reporte.delivered += 1
                reporte.hop_histogram[evento.hops] += 1
            else:
                reporte.duplicates += 1
        elif kind == 'C':
            reporte.control_messages += 1

    for mensaje, receptores in ventana.cerrar_todos():
        reporte.registrar_cobertura(mensaje, len(receptores), por_mensaje)
    return reporte


@dataclass
class CorpusReport:
    """Medias no ponderadas sobre los grafos de un corpus."""

    reportes: List[DisseminationReport]

    @property
    def mean_coverage(self) -> float:
        return media_segura(r.mean_coverage for r in self.reportes)

    @property
    def mean_delivered(self) -> float:
        return media_segura(r.delivered for r in self.reportes)

    @property
    def mean_duplicates(self) -> float:
        return media_segura(r.duplicates for r in self.reportes)

    @property
    def total_delivered(self) -> int:
        return sum(r.delivered for r in self.reportes)

    @property
    def total_control(self) -> int:
        return sum(r.control_messages for r in self.reportes)

    def hop_histogram(self) -> Counter:
        total = Counter()
        for r in self.reportes:
            total.update(r.hop_histogram)
        return total

    def como_diccionario(self) -> Dict[str, str]:
        return {
            'graphs': str(len(self.reportes)),
            'total_delivered': str(self.total_delivered),
            'mean_delivered': repr(self.mean_delivered),
            'mean_duplicates': repr(self.mean_duplicates),
            'mean_coverage': repr(self.mean_coverage),
            'control_messages': str(self.total_control),
        }

    def tabla(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    'graph': r.label,
                    'generated': r.generated,
                    'delivered': r.delivered,
                    'duplicates': r.duplicates,
                    'control_messages': r.control_messages,
                    'mean_coverage': r.mean_coverage,
                    'mean_hops': r.mean_hops,
                }
                for r in self.reportes
            ],
            columns=['graph', 'generated', 'delivered', 'duplicates',
                     'control_messages', 'mean_coverage', 'mean_hops'],
        )


def aggregate_corpus(reportes: Sequence[DisseminationReport]) -> CorpusReport:
    return CorpusReport(list(reportes))


# ============================================================================
# INTEGRIDAD
# ============================================================================

@dataclass
class IntegrityReport:
    eventos: int = 0
    violaciones: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violaciones

    def como_diccionario(self) -> Dict[str, str]:
        return {
            'events': str(self.eventos),
            'violations': str(len(self.violaciones)),
            'ok': 'yes' if self.ok else 'no',
        }


class VerificadorIntegridad:
    """
    Verifica los invariantes de una traza evento por evento.

    - tiempo no decreciente
    - cada R/D/S referencia un G previo y cada G es único (seq creciente por origen)
    - a lo sumo un R por (nodo, mensaje) y el origen nunca registra R
    - saltos de cada R <= ttl de la cabecera
    - conservación (si hay líneas S): por mensaje, S enviados en t = R + D en t + 1

    Solo guarda los mensajes vivos (VentanaMensajes) y los envíos y
    recepciones de los pasos que aún no se pueden cerrar.
    """

    def __init__(self, metadata: Mapping[str, str] = None, max_violaciones: int = 100):
        metadata = metadata or {}
        self.ttl = _ttl_de(metadata)
        pasos = metadata.get('steps', '')
        self.ultimo_paso = int(pasos) - 1 if pasos.isdigit() else None
        self.max_violaciones = max_violaciones

        self.reporte = IntegrityReport()
        self.ventana = VentanaMensajes(self.ttl)
        # paso del envío → mensaje → cantidad
        self.envios: Dict[int, Counter] = {}
        self.recepciones: Dict[int, Counter] = {}
        self.hay_envios = False
        self.t_actual = -1

    def violacion(self, texto: str) -> None:
        if len(self.reporte.violaciones) < self.max_violaciones:
            self.reporte.violaciones.append(texto)

    def _cerrar_pasos(self, hasta: int, limite: Optional[int] = None) -> None:
        """Compara envíos y recepciones de los pasos <= hasta y los descarta."""
        pasos = sorted(s for s in self.envios.keys() | self.recepciones.keys() if s <= hasta)
        for s in pasos:
            enviados = self.envios.pop(s, Counter())
            recibidos = self.recepciones.pop(s, Counter())
            if not self.hay_envios or (limite is not None and s >= limite):
                continue
            for (origen, seq), cantidad in enviados.items():
                if recibidos[(origen, seq)] != cantidad:
                    self.violacion(
                        f"conservación: {cantidad} envíos de {origen}:{seq} en t={s} "
                        f"y {recibidos[(origen, seq)]} recepciones en t={s + 1}"
                    )

    def procesar(self, evento: TraceEvent) -> None:
        self.reporte.eventos += 1
        if evento.t < self.t_actual:
            self.violacion(f"tiempo decreciente: {evento.to_line()!r} después de t={self.t_actual}")
        elif evento.t > self.t_actual:
            self.t_actual = evento.t
            self.ventana.avanzar(self.t_actual)
            self._cerrar_pasos(self.t_actual - 2)

        kind = evento.kind
        if kind == 'G':
            if not self.ventana.abrir(evento.mensaje, evento.t):
                self.violacion(f"mensaje generado dos veces o fuera de orden: {evento.to_line()!r}")
            if evento.origin != evento.node:
                self.violacion(f"G con origen distinto del nodo: {evento.to_line()!r}")
            return
        if kind not in ('R', 'D', 'S'):
            return

        receptores = self.ventana.receptores(evento.mensaje)
        if receptores is None:
            if self.ventana.cerrado(evento.mensaje):
                self.violacion(f"{kind} después de cerrado el mensaje: {evento.to_line()!r}")
            else:
                self.violacion(f"{kind} sin G previo: {evento.to_line()!r}")

        if kind == 'S':
            self.hay_envios = True
            self.envios.setdefault(evento.t, Counter())[evento.mensaje] += 1
            return
        self.recepciones.setdefault(evento.t - 1, Counter())[evento.mensaje] += 1
        if kind == 'R':
            if receptores is not None:
                if evento.node in receptores:
                    self.violacion(f"R repetido para el nodo y mensaje: {evento.to_line()!r}")
                receptores.add(evento.node)
            if evento.node == evento.origin:
                self.violacion(f"el origen registró R de su propio mensaje: {evento.to_line()!r}")
            if self.ttl is not None and evento.hops > self.ttl:
                self.violacion(f"saltos {evento.hops} > ttl {self.ttl}: {evento.to_line()!r}")

    def finalizar(self) -> IntegrityReport:
        limite = self.ultimo_paso if self.ultimo_paso is not None else self.t_actual
        self._cerrar_pasos(self.t_actual, limite)
        self.ventana.cerrar_todos()
        return self.reporte


def check_integrity(eventos: Iterable[TraceEvent], metadata: Mapping[str, str] = None,
                    max_violaciones: int = 100) -> IntegrityReport:
    """Verifica los invariantes de una traza en una sola pasada (ver VerificadorIntegridad)."""
    verificador = VerificadorIntegridad(metadata, max_violaciones)
    for evento in eventos:
        verificador.procesar(evento)
    return verificador.finalizar()


# ============================================================================
# SPEEDUP
# ============================================================================

@dataclass
class SpeedupReport:
    baseline: str
    wct: Dict[str, float]
    speedup: Dict[str, float]

    def tabla(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{'label': k, 'wct_seconds': self.wct[k], 'speedup': self.speedup[k]} for k in self.wct],
            columns=['label', 'wct_seconds', 'speedup'],
        )


def speedup_report(ejecuciones: Sequence[Tuple[str, object]]) -> SpeedupReport:
    """
    Speedup de cada configuración frente a la secuencial (L=1, gaia off).

    Args:
        ejecuciones: lista de (etiqueta, EngineStats)

    Raises:
        InputError: no hay exactamente una ejecución secuencial
    """
    secuenciales = [(k, s) for k, s in ejecuciones if s.lp_count == 1 and not s.gaia]
    if not secuenciales:
        raise InputError("falta la ejecución secuencial de referencia (lp=1, gaia off)")
    if len(secuenciales) > 1:
        raise InputError(
            f"hay {len(secuenciales)} ejecuciones secuenciales; se requiere exactamente una"
        )
    base_label, base = secuenciales[0]

    wct: Dict[str, float] = {}
    speedup: Dict[str, float] = {}
    for label, stats in ejecuciones:
        wct[label] = stats.wct_seconds
        if stats is base:
            speedup[label] = 1.0
        elif stats.wct_seconds > 0:
            speedup[label] = base.wct_seconds / stats.wct_seconds
        else:
            speedup[label] = float('inf')
    return SpeedupReport(base_label, wct, speedup)


# ============================================================================
# ESCRITURA
# ============================================================================

def formato_clave_valor(valores: Mapping[str, str]) -> str:
    return ''.join(f'{clave}={valor}\n' for clave, valor in valores.items())


def escribir_reporte(valores: Mapping[str, str], tabla: Optional[pd.DataFrame],
                     salida: Union[str, Path, TextIO]) -> None:
    """Escribe el resumen clave=valor y, si se indica, la tabla CSV a continuación."""
    texto = formato_clave_valor(valores)
    if tabla is not None:
        texto += '\n' + tabla.to_csv(index=False, lineterminator='\n')
    if isinstance(salida, (str, Path)):
        Path(salida).write_bytes(texto.encode('utf-8'))
    else:
        salida.write(texto)
