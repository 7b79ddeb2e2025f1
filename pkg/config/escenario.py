# config/escenario.py
# Configuración de escenarios y corpus: dataclasses + cargador por capas

"""
PROPÓSITO:
-----------
Reúne en un solo objeto validado todo lo que necesita una ejecución:

    ScenarioConfig  →  sim / bench (protocolo, motor, migración, trazas)
    CorpusConfig    →  gen (modelo de grafo, tamaño, semilla)

PRECEDENCIA (de menor a mayor):
-------------------------------
1. Valores por defecto (config/parametros.py)
2. Archivo `clave=valor` (leído con python-dotenv)
3. Variables de entorno LUNES_<CLAVE> (ej: LUNES_PROB=0.5)
4. Flags de la línea de comandos

Toda conversión y validación ocurre aquí, antes de cualquier efecto
secundario. Un valor inválido lanza InvalidParameterError; una clave o un
protocolo desconocidos lanzan ConfigurationError.

EJEMPLO DE USO:
---------------
from config.escenario import cargar_configuracion

config = cargar_configuracion('escenario.cfg', flags={'lp': 4, 'gaia': 'on'})
print(config.como_cabecera(n=200, e=400, ttl=8))
"""

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from dotenv import dotenv_values

from config.parametros import (
    BENCH_GRAPHS,
    ESCENARIOS_BENCH,
    JOBS,
    PROTOCOLOS_DISPONIBLES,
    REPORTES_DISPONIBLES,
    TRACE_FORMAT_VERSION,
    valores_por_defecto,
)
from src.utils.validators import (
    ConfigurationError,
    InvalidParameterError,
    validar_booleano,
    validar_entero,
    validar_opcion,
    validar_probabilidad,
    validar_rango,
    validar_real,
)

PREFIJO_ENTORNO = 'LUNES_'


@dataclass(frozen=True)
class ScenarioConfig:
    """Configuración efectiva de una ejecución del simulador."""

    corpus: Optional[str] = None
    scenario: str = ''
    protocol: str = 'fixed'
    prob: float = 0.8
    gen_prob: float = 0.05
    ttl: Union[int, str] = 'auto'
    alpha: float = 0.5
    stim_prob: float = 1.0
    stim_duration: int = 50
    recv_window: int = 50
    preboost_all: bool = False
    steps: int = 1000
    lp: int = 1
    gaia: bool = False
    delta: float = 0.2
    window: int = 20
    theta: float = 1.5
    k_mig: int = 10
    workers: int = 1
    seed: int = 42
    verbosity: int = 1

    def __post_init__(self):
        validar_configuracion(self)

    def con(self, **cambios) -> 'ScenarioConfig':
        """Copia con algunos valores cambiados (vuelve a validar)."""
        return replace(self, **{k: convertir_valor(k, v) for k, v in cambios.items()})

    def ttl_fijo(self) -> Optional[int]:
        return None if self.ttl == 'auto' else int(self.ttl)

    def como_diccionario(self) -> Dict:
        return asdict(self)

    def como_cabecera(self, n: int, e: int, ttl: int) -> Dict[str, str]:
        """Pares clave → valor de la cabecera de una traza (orden fijo)."""
        cabecera = {
            'seed': str(self.seed),
            'scenario': self.scenario or (Path(self.corpus).name if self.corpus else ''),
            'protocol': self.protocol,
            'n': str(n),
            'e': str(e),
            'ttl': str(ttl),
            'steps': str(self.steps),
            'lp': str(self.lp),
            'gaia': 'on' if self.gaia else 'off',
            'prob': repr(float(self.prob)),
            'gen_prob': repr(float(self.gen_prob)),
        }
        if self.protocol == 'adaptive':
            cabecera.update({
                'alpha': repr(float(self.alpha)),
                'stim_prob': repr(float(self.stim_prob)),
                'stim_duration': str(self.stim_duration),
                'recv_window': str(self.recv_window),
                'preboost_all': 'on' if self.preboost_all else 'off',
            })
        if self.gaia:
            cabecera.update({
                'delta': repr(float(self.delta)),
                'window': str(self.window),
                'theta': repr(float(self.theta)),
                'k_mig': str(self.k_mig),
            })
        cabecera['verbosity'] = str(self.verbosity)
        cabecera['format_version'] = str(TRACE_FORMAT_VERSION)
        return cabecera


@dataclass(frozen=True)
class CorpusConfig:
    """Parámetros de `gen`."""

    model: str = 'er'
    nodes: int = 200
    edges: Optional[int] = None
    m0: Optional[int] = None
    m_attach: Optional[int] = None
    count: int = 10
    seed: int = 42
    out: str = 'corpora/corpus'
    label: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if self.model not in ('er', 'ba'):
            raise InvalidParameterError(f"'model' = {self.model!r} no es válido. Use: ba, er")
        validar_rango(self.nodes, 1, None, 'nodes')
        validar_rango(self.count, 1, None, 'count')
        validar_rango(self.seed, 0, None, 'seed')
        validar_rango(self.workers, 1, None, 'workers')
        if self.model == 'er':
            if self.edges is None:
                raise InvalidParameterError("'edges' es obligatorio con --model er")
            validar_rango(self.edges, 0, self.nodes * (self.nodes - 1) // 2, 'edges')
        else:
            if self.m0 is None or self.m_attach is None:
                raise InvalidParameterError("'m0' y 'm_attach' son obligatorios con --model ba")
            validar_rango(self.m_attach, 1, None, 'm_attach')
            validar_rango(self.m0, self.m_attach, self.nodes, 'm0')

    def parametros_modelo(self) -> Dict[str, int]:
        if self.model == 'er':
            return {'n': self.nodes, 'm': self.edges}
        return {'n': self.nodes, 'm0': self.m0, 'm_attach': self.m_attach}


@dataclass(frozen=True)
class AjustesEjecucion:
    """
    Ajustes de `sim`, `analyze` y `bench` que no describen el escenario:
    rutas de entrada y salida, paralelismo y tipo de reporte.

    Siguen las mismas capas que ScenarioConfig (archivo < LUNES_* < flags).
    `trace` y `stats` aceptan varias rutas separadas por espacios.
    """

    out: Optional[str] = None
    jobs: int = JOBS
    graphs: int = BENCH_GRAPHS
    scenarios: Optional[str] = None
    report: Optional[str] = None
    trace: Tuple[str, ...] = ()
    stats: Tuple[str, ...] = ()
    quiet: bool = False

    def __post_init__(self):
        validar_rango(self.jobs, 1, None, 'jobs')
        validar_rango(self.graphs, 1, None, 'graphs')
        if self.scenarios is not None:
            validar_opcion(self.scenarios, ESCENARIOS_BENCH, 'scenarios')
        if self.report is not None:
            validar_opcion(self.report, REPORTES_DISPONIBLES, 'report')


# ============================================================================
# CONVERSIÓN Y VALIDACIÓN
# ============================================================================

_ENTEROS = {'stim_duration', 'recv_window', 'steps', 'lp', 'window', 'k_mig', 'workers', 'seed', 'verbosity'}
_PROBABILIDADES = {'prob', 'gen_prob', 'stim_prob'}
_REALES = {'alpha', 'delta', 'theta'}
_BOOLEANOS = {'gaia', 'preboost_all'}
_TEXTOS = {'corpus', 'scenario', 'protocol'}


def normalizar_clave(clave: str) -> str:
    return clave.strip().lower().replace('-', '_')


def convertir_valor(clave: str, valor):
    """Convierte un valor leído de archivo, entorno o flag a su tipo."""
    if clave in _ENTEROS:
        return validar_entero(valor, clave)
    if clave in _PROBABILIDADES:
        return validar_probabilidad(valor, clave)
    if clave in _REALES:
        return validar_real(valor, clave)
    if clave in _BOOLEANOS:
        return validar_booleano(valor, clave)
    if clave == 'ttl':
        if isinstance(valor, str) and valor.strip().lower() == 'auto':
            return 'auto'
        return validar_entero(valor, 'ttl')
    if clave in _TEXTOS:
        return None if valor is None else str(valor).strip()
    raise ConfigurationError(f"clave de configuración desconocida: {clave!r}")


def validar_configuracion(config: ScenarioConfig) -> None:
    if config.protocol not in PROTOCOLOS_DISPONIBLES:
        raise ConfigurationError(
            f"protocolo desconocido {config.protocol!r}. Use: {', '.join(PROTOCOLOS_DISPONIBLES)}"
        )
    validar_rango(config.steps, 1, None, 'steps')
    validar_rango(config.lp, 1, None, 'lp')
    validar_rango(config.workers, 1, None, 'workers')
    validar_rango(config.delta, 0.0, None, 'delta')
    if config.theta <= 1.0:
        raise InvalidParameterError(f"'theta' = {config.theta} debe ser mayor que 1")
    validar_rango(config.window, 1, None, 'window')
    validar_rango(config.k_mig, 1, None, 'k_mig')
    validar_rango(config.alpha, 0.0, None, 'alpha')
    validar_rango(config.stim_duration, 1, None, 'stim_duration')
    validar_rango(config.recv_window, 1, None, 'recv_window')
    validar_rango(config.seed, 0, 2**64 - 1, 'seed')
    validar_rango(config.verbosity, 0, None, 'verbosity')
    if config.ttl != 'auto':
        validar_rango(config.ttl, 0, None, 'ttl')


# ============================================================================
# CARGADOR POR CAPAS
# ============================================================================

def leer_archivo_configuracion(ruta: Union[str, Path]) -> Dict[str, str]:
    ruta = Path(ruta)
    if not ruta.exists():
        raise FileNotFoundError(f"no se encontró el archivo de configuración {ruta}")
    return {normalizar_clave(k): v for k, v in dotenv_values(ruta).items() if v is not None}


def leer_entorno(entorno: Mapping[str, str] = None,
                 conocidas: Iterable[str] = None) -> Dict[str, str]:
    """Variables LUNES_<CLAVE> que corresponden a claves conocidas (por defecto, las del escenario)."""
    entorno = os.environ if entorno is None else entorno
    conocidas = set(conocidas) if conocidas is not None else {f.name for f in fields(ScenarioConfig)}
    valores = {}
    for nombre, valor in entorno.items():
        if not nombre.startswith(PREFIJO_ENTORNO):
            continue
        clave = normalizar_clave(nombre[len(PREFIJO_ENTORNO):])
        if clave in conocidas:
            valores[clave] = valor
    return valores


def cargar_configuracion(archivo: Union[str, Path, None] = None,
                         flags: Mapping = None,
                         entorno: Mapping[str, str] = None) -> ScenarioConfig:
    """
    Construye la configuración efectiva aplicando las cuatro capas.

    Args:
        archivo: archivo clave=valor opcional
        flags: valores de la línea de comandos (None = no indicado)
        entorno: variables de entorno (por defecto os.environ)

    Raises:
        ConfigurationError: clave o protocolo desconocidos
        InvalidParameterError: valor fuera de rango
        FileNotFoundError: el archivo indicado no existe
    """
    valores = valores_por_defecto()
    if archivo is not None:
        valores.update({k: v for k, v in leer_archivo_configuracion(archivo).items()
                        if k not in CLAVES_EJECUCION})
    valores.update(leer_entorno(entorno))
    valores.update({normalizar_clave(k): v for k, v in (flags or {}).items() if v is not None})

    convertidos = {clave: convertir_valor(clave, valor) for clave, valor in valores.items()}
    return ScenarioConfig(**convertidos)


CLAVES_EJECUCION = frozenset(f.name for f in fields(AjustesEjecucion))


def convertir_ajuste(clave: str, valor):
    if clave in ('jobs', 'graphs'):
        return validar_entero(valor, clave)
    if clave in ('trace', 'stats'):
        return tuple(valor.split()) if isinstance(valor, str) else tuple(valor)
    if clave == 'quiet':
        return validar_booleano(valor, clave)
    return str(valor).strip()


def cargar_ajustes_ejecucion(archivo: Union[str, Path, None] = None,
                             flags: Mapping = None,
                             entorno: Mapping[str, str] = None) -> AjustesEjecucion:
    """
    Ajustes de ejecución con las mismas capas que cargar_configuracion.

    Un mismo archivo puede mezclar claves del escenario y de ejecución; cada
    cargador toma las suyas. Una clave que no es de ninguno de los dos lanza
    ConfigurationError. En `flags`, None, listas vacías y False significan
    "no indicado".
    """
    escenario = {f.name for f in fields(ScenarioConfig)}
    valores: Dict[str, object] = {}
    if archivo is not None:
        for clave, valor in leer_archivo_configuracion(archivo).items():
            if clave in CLAVES_EJECUCION:
                valores[clave] = valor
            elif clave not in escenario:
                raise ConfigurationError(f"clave de configuración desconocida: {clave!r}")
    valores.update(leer_entorno(entorno, CLAVES_EJECUCION))
    valores.update({
        normalizar_clave(k): v for k, v in (flags or {}).items()
        if v is not None and v is not False and v != []
    })
    return AjustesEjecucion(**{clave: convertir_ajuste(clave, valor) for clave, valor in valores.items()})


_ENTEROS_CORPUS = {'nodes', 'edges', 'm0', 'm_attach', 'count', 'seed', 'workers'}


def cargar_configuracion_corpus(archivo: Union[str, Path, None] = None,
                                flags: Mapping = None,
                                entorno: Mapping[str, str] = None) -> CorpusConfig:
    """Mismo esquema de capas que cargar_configuracion, para `gen`."""
    conocidas = {f.name for f in fields(CorpusConfig)}
    entorno = os.environ if entorno is None else entorno

    valores: Dict[str, object] = {}
    if archivo is not None:
        for clave, valor in leer_archivo_configuracion(archivo).items():
            if clave not in conocidas:
                raise ConfigurationError(f"clave de configuración desconocida: {clave!r}")
            valores[clave] = valor
    for nombre, valor in entorno.items():
        if nombre.startswith(PREFIJO_ENTORNO):
            clave = normalizar_clave(nombre[len(PREFIJO_ENTORNO):])
            if clave in conocidas:
                valores[clave] = valor
    valores.update({normalizar_clave(k): v for k, v in (flags or {}).items() if v is not None})

    convertidos = {
        clave: validar_entero(valor, clave) if clave in _ENTEROS_CORPUS else str(valor).strip()
        for clave, valor in valores.items()
    }
    return CorpusConfig(**convertidos)
