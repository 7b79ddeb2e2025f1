# src/data/corpus.py
# Corpus de grafos: testbeds reproducibles en disco

"""
PROPÓSITO:
-----------
Un corpus es un conjunto de grafos con los mismos n y e, usado como testbed
común para comparar protocolos "bajo exactamente las mismas condiciones".

ESTRUCTURA EN DISCO:
--------------------
    corpora/s1/
        manifest.txt      model=er, n, m (o m0/m_attach), count, master_seed, ...
        graph_000.dot
        graph_001.dot
        ...
        graph_007.map     (solo corpus importados con ids renumerados)

El grafo k se genera con la semilla derivar_semilla(master_seed, k), de modo
que regenerar desde el manifiesto produce archivos idénticos byte a byte.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Union

import pandas as pd
from dotenv import dotenv_values

from src.data.dot_io import guardar_dot, leer_dot
from src.data.graph import Graph
from src.data.graph_generator import gen_barabasi_albert, gen_erdos_renyi
from src.data.graph_processor import degree_summary, validar_grafo
from src.utils.calculations import derivar_semilla
from src.utils.validators import (
    InvalidParameterError,
    validar_entero,
    validar_opcion,
    validar_rango,
)

FORMAT_VERSION = 1
ARCHIVO_MANIFIESTO = 'manifest.txt'
MODELOS = ('er', 'ba')

# Claves de parámetros que cada modelo guarda en el manifiesto, en orden
PARAMETROS_MODELO = {
    'er': ('n', 'm'),
    'ba': ('n', 'm0', 'm_attach'),
    'imported': ('n', 'm'),
}


@dataclass
class Corpus:
    """Grafos de un testbed con sus metadatos de generación."""

    graphs: List[Graph]
    label: str
    model: str
    params: Dict[str, int]
    master_seed: int = 0
    mappings: Dict[int, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graphs[0].node_count if self.graphs else 0

    @property
    def e(self) -> int:
        return self.graphs[0].edge_count if self.graphs else 0


def nombre_grafo(k: int) -> str:
    return f'graph_{k:03d}'


def _validar_parametros(model: str, params: Dict) -> Dict[str, int]:
    model = validar_opcion(model, MODELOS, 'model')
    limpios = {clave: validar_entero(params.get(clave), clave) for clave in PARAMETROS_MODELO[model]}
    validar_rango(limpios['n'], 1, None, 'nodes')
    if model == 'er':
        n = limpios['n']
        validar_rango(limpios['m'], 0, n * (n - 1) // 2, 'edges')
    else:
        validar_rango(limpios['m_attach'], 1, None, 'm_attach')
        validar_rango(limpios['m0'], limpios['m_attach'], limpios['n'], 'm0')
    return limpios


def generar_grafo(model: str, params: Dict[str, int], semilla: int) -> Graph:
    if model == 'er':
        return gen_erdos_renyi(params['n'], params['m'], semilla)
    return gen_barabasi_albert(params['n'], params['m0'], params['m_attach'], semilla)


def _escribir_manifiesto(destino: Path, corpus: Corpus) -> Path:
    lineas = [f'model={corpus.model}']
    lineas.extend(f'{clave}={corpus.params[clave]}' for clave in PARAMETROS_MODELO[corpus.model])
    lineas.append(f'count={len(corpus.graphs)}')
    lineas.append(f'master_seed={corpus.master_seed}')
    lineas.append(f'label={corpus.label}')
    if corpus.mappings:
        lineas.append('mappings=' + ','.join(corpus.mappings[k] for k in sorted(corpus.mappings)))
    lineas.append(f'format_version={FORMAT_VERSION}')
    ruta = destino / ARCHIVO_MANIFIESTO
    ruta.write_bytes(('\n'.join(lineas) + '\n').encode('utf-8'))
    return ruta


def leer_manifiesto(directorio: Union[str, Path]) -> Dict[str, str]:
    ruta = Path(directorio) / ARCHIVO_MANIFIESTO
    if not ruta.exists():
        raise FileNotFoundError(f"no se encontró el manifiesto {ruta}")
    return {clave: (valor or '') for clave, valor in dotenv_values(ruta).items()}


def corpus_generate(model: str, params: Dict, count: int, master_seed: int,
                    out: Union[str, Path], label: str = None, workers: int = 1,
                    verbose: bool = False) -> Corpus:
    """
    Genera un corpus completo y lo escribe en `out`.

    Args:
        model: 'er' o 'ba'
        params: {'n', 'm'} para er; {'n', 'm0', 'm_attach'} para ba
        count: número de grafos (>= 1)
        master_seed: semilla maestra
        out: directorio destino (se crea si no existe)
        label: identificador del corpus (por defecto el nombre del directorio)
        workers: hilos para generar grafos en paralelo

    Returns:
        Corpus generado

    Raises:
        InvalidParameterError: parámetros inválidos (antes de escribir nada)
        OSError: directorio no escribible
    """
    limpios = _validar_parametros(model, params)
    count = validar_rango(validar_entero(count, 'count'), 1, None, 'count')
    master_seed = validar_rango(validar_entero(master_seed, 'seed'), 0, None, 'seed')
    destino = Path(out)
    label = label or destino.name

    if verbose:
        print(f"\n{'='*70}")
        print(f"GENERANDO CORPUS '{label}'")
        print(f"{'='*70}")
        print(f"Modelo: {model}  Parámetros: {limpios}")
        print(f"Grafos: {count}  Semilla maestra: {master_seed}")

    semillas = [derivar_semilla(master_seed, k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        grafos = list(pool.map(lambda s: generar_grafo(model, limpios, s), semillas))

    destino.mkdir(parents=True, exist_ok=True)
    corpus = Corpus(grafos, label, model, limpios, master_seed)
    for k, grafo in enumerate(grafos):
        guardar_dot(grafo, destino / f'{nombre_grafo(k)}.dot')
        if verbose:
            print(f"  - {nombre_grafo(k)}.dot: {grafo.node_count} nodos, {grafo.edge_count} aristas")
            validar_grafo(grafo, verbose=True)
    _escribir_manifiesto(destino, corpus)

    if verbose:
        print(f"✓ Corpus escrito en: {destino}")
        print(f"{'='*70}\n")

    return corpus


def load_corpus(directorio: Union[str, Path]) -> Corpus:
    """
    Carga un corpus desde disco (manifiesto + graph_*.dot en orden).

    Raises:
        FileNotFoundError: falta el manifiesto o algún archivo de grafo
        DotParseError: algún grafo está mal formado
    """
    directorio = Path(directorio)
    manifiesto = leer_manifiesto(directorio)
    model = manifiesto.get('model', '')
    if model not in PARAMETROS_MODELO:
        raise InvalidParameterError(f"modelo desconocido en el manifiesto: {model!r}")
    count = validar_entero(manifiesto.get('count'), 'count')
    params = {clave: validar_entero(manifiesto.get(clave), clave) for clave in PARAMETROS_MODELO[model]}

    grafos = []
    for k in range(count):
        ruta = directorio / f'{nombre_grafo(k)}.dot'
        if not ruta.exists():
            raise FileNotFoundError(f"falta el grafo {ruta}")
        grafos.append(leer_dot(ruta))

    mappings = {}
    for nombre in filter(None, manifiesto.get('mappings', '').split(',')):
        mappings[int(nombre[len('graph_'):len('graph_') + 3])] = nombre

    return Corpus(
        graphs=grafos,
        label=manifiesto.get('label') or directorio.name,
        model=model,
        params=params,
        master_seed=validar_entero(manifiesto.get('master_seed', 0), 'master_seed'),
        mappings=mappings,
    )


def regenerate_corpus(directorio: Union[str, Path], out: Union[str, Path]) -> Corpus:
    """Regenera un corpus a partir de su manifiesto (archivos idénticos byte a byte)."""
    manifiesto = leer_manifiesto(directorio)
    model = manifiesto.get('model', '')
    if model not in MODELOS:
        raise InvalidParameterError(f"el corpus de modelo {model!r} no se puede regenerar")
    params = {clave: manifiesto.get(clave) for clave in PARAMETROS_MODELO[model]}
    return corpus_generate(
        model, params,
        count=manifiesto.get('count'),
        master_seed=manifiesto.get('master_seed'),
        out=out,
        label=manifiesto.get('label') or None,
    )


def import_corpus(archivos: Sequence[Union[str, Path]], out: Union[str, Path],
                  label: str = None, verbose: bool = False) -> Corpus:
    """
    Importa topologías generadas por herramientas externas como corpus.

    Los grafos deben compartir n y e. Cuando un grafo trae ids que no son
    0..n-1, la correspondencia "nuevo original" se guarda en graph_XXX.map.
    """
    if not archivos:
        raise InvalidParameterError("import_corpus requiere al menos un archivo dot")
    grafos = [leer_dot(ruta) for ruta in archivos]
    n, e = grafos[0].node_count, grafos[0].edge_count
    for ruta, grafo in zip(archivos, grafos):
        if (grafo.node_count, grafo.edge_count) != (n, e):
            raise InvalidParameterError(
                f"{ruta}: ({grafo.node_count} nodos, {grafo.edge_count} aristas) "
                f"difiere del corpus ({n}, {e})"
            )

    destino = Path(out)
    destino.mkdir(parents=True, exist_ok=True)
    corpus = Corpus(grafos, label or destino.name, 'imported', {'n': n, 'm': e})

    for k, grafo in enumerate(grafos):
        guardar_dot(grafo, destino / f'{nombre_grafo(k)}.dot')
        if grafo.etiquetas is not None:
            nombre = f'{nombre_grafo(k)}.map'
            contenido = ''.join(f'{nuevo} {original}\n' for nuevo, original in enumerate(grafo.etiquetas))
            (destino / nombre).write_bytes(contenido.encode('utf-8'))
            corpus.mappings[k] = nombre
        if verbose:
            print(f"  ✓ {archivos[k]} → {nombre_grafo(k)}.dot")
    _escribir_manifiesto(destino, corpus)
    return corpus


def corpus_statistics(corpus: Corpus) -> pd.DataFrame:
    """Tabla con una fila por grafo: n, e, grados y conectividad."""
    filas = []
    for k, grafo in enumerate(corpus.graphs):
        resumen = degree_summary(grafo)
        validacion = validar_grafo(grafo)
        filas.append({
            'grafo': nombre_grafo(k),
            'n': grafo.node_count,
            'e': grafo.edge_count,
            'mean_degree': resumen.mean_degree_std,
            'lambda_ttl': resumen.lambda_ttl,
            'min_degree': resumen.min_degree,
            'max_degree': resumen.max_degree,
            'connected': validacion['es_conexo'],
            'components': validacion['num_componentes'],
        })
    return pd.DataFrame(filas)
