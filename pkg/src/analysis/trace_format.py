# src/analysis/trace_format.py
# Formato de las trazas de simulación: escritura y lectura en streaming

"""
PROPÓSITO:
-----------
Una traza es texto ASCII línea a línea, pensado para procesarse en streaming
y compararse con diff.

CABECERA:
---------
    # seed=42
    # scenario=s1
    # protocol=fixed
    # n=200
    ...
    # format_version=1

CUERPO (un evento por línea):
-----------------------------
    G <t> <node> <origin>:<seq>             generación
    R <t> <node> <origin>:<seq> <hops>      recepción (primera copia)
    D <t> <node> <origin>:<seq>             duplicado
    S <t> <node> <origin>:<seq> <dest>      envío DATA (solo verbosity >= 2)
    M <t> <entity> <from_lp> <to_lp>        migración
    C <t> <node> <target_origin> <dest>     estímulo enviado (control)

Los eventos de un mismo paso se escriben en orden canónico, independiente del
número de LPs y de hilos: primero la fase de entregas (por clave canónica del
mensaje entregado), luego la fase por entidad (id ascendente), luego las
migraciones.
"""

import hashlib
import time
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, TextIO

from src.utils.validators import TraceParseError

TIPOS_EVENTO = ('G', 'R', 'D', 'S', 'M', 'C')
TIPOS_PROTOCOLO = ('G', 'R', 'D')

# Campos numéricos esperados después del tipo, por tipo de evento
_FORMATO = {
    'G': ('t', 'node', 'msg'),
    'R': ('t', 'node', 'msg', 'hops'),
    'D': ('t', 'node', 'msg'),
    'S': ('t', 'node', 'msg', 'dest'),
    'M': ('t', 'node', 'from_lp', 'to_lp'),
    'C': ('t', 'node', 'target_origin', 'dest'),
}


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    t: int
    node: int
    origin: Optional[int] = None
    seq: Optional[int] = None
    hops: Optional[int] = None
    dest: Optional[int] = None
    from_lp: Optional[int] = None
    to_lp: Optional[int] = None
    target_origin: Optional[int] = None

    @property
    def mensaje(self):
        return (self.origin, self.seq)

    def to_line(self) -> str:
        k = self.kind
        if k == 'G' or k == 'D':
            return f'{k} {self.t} {self.node} {self.origin}:{self.seq}'
        if k == 'R':
            return f'R {self.t} {self.node} {self.origin}:{self.seq} {self.hops}'
        if k == 'S':
            return f'S {self.t} {self.node} {self.origin}:{self.seq} {self.dest}'
        if k == 'M':
            return f'M {self.t} {self.node} {self.from_lp} {self.to_lp}'
        return f'C {self.t} {self.node} {self.target_origin} {self.dest}'


# ============================================================================
# ESCRITURA
# ============================================================================

class TraceWriter:
    """
    Escribe cabecera y eventos en un stream de texto.

    Acumula en `segundos_escritura` el tiempo gastado escribiendo, para que el
    motor lo excluya del WCT.
    """

    def __init__(self, destino: TextIO):
        self.destino = destino
        self.segundos_escritura = 0.0
        self.eventos_escritos = 0

    def escribir_cabecera(self, cabecera: Mapping[str, str]) -> None:
        inicio = time.perf_counter()
        self.destino.write(''.join(f'# {clave}={valor}\n' for clave, valor in cabecera.items()))
        self.segundos_escritura += time.perf_counter() - inicio

    def escribir_eventos(self, eventos: Iterable[TraceEvent]) -> None:
        inicio = time.perf_counter()
        lineas = [evento.to_line() for evento in eventos]
        if lineas:
            self.destino.write('\n'.join(lineas) + '\n')
            self.eventos_escritos += len(lineas)
        self.segundos_escritura += time.perf_counter() - inicio


# ============================================================================
# LECTURA
# ============================================================================

def _entero(texto: str, campo: str, num_linea: int) -> int:
    if not texto.isdigit():
        raise TraceParseError(f"campo '{campo}' no es un entero no negativo: {texto!r}", num_linea)
    return int(texto)


def parse_line(linea: str, num_linea: int = None) -> TraceEvent:
    """
    Convierte una línea del cuerpo en TraceEvent.

    Raises:
        TraceParseError: tipo desconocido o campos mal formados

    Ejemplo:
        >>> e = parse_line('R 12 7 3:0 2')
        >>> e.t, e.node, e.mensaje, e.hops
        (12, 7, (3, 0), 2)
    """
    partes = linea.split()
    if not partes:
        raise TraceParseError("línea vacía", num_linea)
    kind = partes[0]
    if kind not in _FORMATO:
        raise TraceParseError(f"tipo de evento desconocido {kind!r}", num_linea)
    campos = _FORMATO[kind]
    if len(partes) - 1 != len(campos):
        raise TraceParseError(
            f"'{kind}' espera {len(campos)} campos, encontrados {len(partes) - 1}", num_linea
        )

    valores: Dict[str, int] = {}
    for campo, texto in zip(campos, partes[1:]):
        if campo == 'msg':
            origen, sep, seq = texto.partition(':')
            if not sep:
                raise TraceParseError(f"se esperaba <origin>:<seq>, encontrado {texto!r}", num_linea)
            valores['origin'] = _entero(origen, 'origin', num_linea)
            valores['seq'] = _entero(seq, 'seq', num_linea)
        else:
            valores[campo] = _entero(texto, campo, num_linea)
    return TraceEvent(kind=kind, **valores)


class TraceParser:
    """
    Lector en streaming de una traza: memoria constante por línea.

    La cabecera queda disponible en `metadata` después de leer_cabecera() o
    en cuanto la iteración alcanza el primer evento.
    """

    def __init__(self, lineas: Iterable[str]):
        self._lineas = enumerate(lineas, start=1)
        self.metadata: Dict[str, str] = {}
        self._pendiente = None
        self._cabecera_leida = False

    def _leer_cabecera_linea(self, linea: str, num_linea: int) -> None:
        contenido = linea[1:].strip()
        clave, sep, valor = contenido.partition('=')
        if not sep or not clave.strip():
            raise TraceParseError(f"cabecera mal formada {linea.strip()!r}", num_linea)
        self.metadata[clave.strip()] = valor.strip()

    def leer_cabecera(self) -> Dict[str, str]:
        if self._cabecera_leida:
            return self.metadata
        for num_linea, linea in self._lineas:
            if linea.startswith('#'):
                self._leer_cabecera_linea(linea, num_linea)
            elif linea.strip():
                self._pendiente = (num_linea, linea)
                break
        self._cabecera_leida = True
        return self.metadata

    def __iter__(self) -> Iterator[TraceEvent]:
        self.leer_cabecera()
        if self._pendiente is not None:
            num_linea, linea = self._pendiente
            self._pendiente = None
            yield parse_line(linea, num_linea)
        for num_linea, linea in self._lineas:
            if not linea.strip():
                continue
            if linea.startswith('#'):
                raise TraceParseError("línea de cabecera después de los eventos", num_linea)
            yield parse_line(linea, num_linea)


def parse_trace(fuente) -> TraceParser:
    """
    Abre una traza para lectura en streaming.

    Args:
        fuente: stream de texto, lista de líneas o texto completo

    Ejemplo:
        >>> parser = parse_trace("# n=3\\nG 0 1 1:0\\n")
        >>> [e.to_line() for e in parser]
        ['G 0 1 1:0']
        >>> parser.metadata
        {'n': '3'}
    """
    if isinstance(fuente, str):
        fuente = fuente.splitlines()
    return TraceParser(fuente)


class HuellaProtocolo:
    """
    Destino de escritura que solo guarda el sha256 de las líneas G/R/D.

    Los eventos de cada paso salen en orden canónico, así que dos ejecuciones
    equivalentes producen la misma secuencia G/R/D y la misma huella sin
    tener la traza en memoria.
    """

    def __init__(self):
        self._hash = hashlib.sha256()
        self.lineas = 0

    def write(self, texto: str) -> int:
        for linea in texto.splitlines():
            if linea[:1] in TIPOS_PROTOCOLO:
                self._hash.update(linea.encode('ascii') + b'\n')
                self.lineas += 1
        return len(texto)

    def hexdigest(self) -> str:
        return self._hash.hexdigest()


def lineas_protocolo(texto: str) -> List[str]:
    """Líneas G/R/D de una traza, ordenadas (base de la comparación entre particiones)."""
    return sorted(
        linea for linea in texto.splitlines()
        if linea[:1] in TIPOS_PROTOCOLO
    )
