# src/cli.py
# Línea de comandos: gen, sim, analyze, bench

"""
PROPÓSITO:
-----------
Une las tres fases del flujo de trabajo para ejecuciones por lotes:

    gen      crea (o importa) un corpus de grafos
    sim      simula un protocolo sobre cada grafo del corpus
    analyze  calcula reportes a partir de trazas o estadísticas
    bench    ejecuta un escenario en las cinco configuraciones de LPs,
             verifica que las trazas sean equivalentes y reporta el speedup

Cada flag tiene su equivalente en archivo de configuración (--config) y en
variable de entorno LUNES_<CLAVE>. Todo se valida antes de escribir nada.

CÓDIGOS DE SALIDA:
------------------
    0 éxito · 1 entrada/salida · 2 uso o parámetro inválido · 3 invariante interno

EJEMPLOS:
---------
python lunes.py gen --model er --nodes 200 --edges 400 --count 10 --seed 42 --out corpora/s1
python lunes.py sim --corpus corpora/s1 --protocol fixed --prob 0.8 --ttl auto --steps 1000 --out runs/s1
python lunes.py analyze --trace runs/s1/*.trace --report messages
python lunes.py bench --scenarios table1 --out bench
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config.escenario import (
    CLAVES_EJECUCION,
    AjustesEjecucion,
    ScenarioConfig,
    cargar_ajustes_ejecucion,
    cargar_configuracion,
    cargar_configuracion_corpus,
    leer_archivo_configuracion,
    leer_entorno,
)
from config.parametros import (
    CONFIGURACIONES_BENCH,
    ESCENARIOS_BENCH,
    ESCENARIOS_TABLA1,
    REPORTES_DISPONIBLES,
    mostrar_configuracion,
)
from src.analysis.reports import (
    aggregate_corpus,
    check_integrity,
    dissemination_report,
    escribir_reporte,
    speedup_report,
)
from src.analysis.trace_format import HuellaProtocolo, parse_trace
from src.data.corpus import (
    Corpus,
    corpus_generate,
    corpus_statistics,
    import_corpus,
    load_corpus,
    nombre_grafo,
    regenerate_corpus,
)
from src.data.graph import Graph
from src.data.graph_processor import ttl_automatico
from src.models.protocols import crear_protocolo
from src.models.simulation_engine import (
    EngineStats,
    etiqueta_configuracion,
    guardar_stats,
    load_stats,
    run,
)
from src.utils.validators import (
    InputError,
    IntegrityError,
    InvariantViolation,
    codigo_salida_para,
)

# Flags de simulación: (nombre del flag, ayuda)
_FLAGS_SIM = (
    ('protocol', 'broadcast, fixed o adaptive'),
    ('prob', 'v: probabilidad de reenvío'),
    ('gen-prob', 'p_gen: probabilidad de generación por paso'),
    ('ttl', "entero o 'auto'"),
    ('alpha', 'fracción de la tasa esperada que dispara estímulos'),
    ('stim-prob', 'probabilidad reforzada p_stim'),
    ('stim-duration', 'duración D de un estímulo (pasos)'),
    ('recv-window', 'ventana W_r de monitoreo (pasos)'),
    ('preboost-all', 'on/off: todos los pares reforzados desde t=0'),
    ('steps', 'pasos de tiempo'),
    ('lp', 'número de LPs'),
    ('gaia', 'on/off: migración de entidades'),
    ('delta', 'holgura de carga δ'),
    ('window', 'ventana de auditoría W'),
    ('theta', 'umbral de atracción θ'),
    ('k-mig', 'periodo de evaluación de migraciones'),
    ('workers', 'hilos que ejecutan los LPs'),
    ('seed', 'semilla maestra'),
    ('verbosity', '>= 2 emite líneas S'),
    ('scenario', 'etiqueta del escenario en la cabecera'),
)


# ============================================================================
# PARSER
# ============================================================================

def _agregar_flags_sim(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='archivo clave=valor')
    for nombre, ayuda in _FLAGS_SIM:
        parser.add_argument(f'--{nombre}', help=ayuda)
    parser.add_argument('--quiet', action='store_true', help='sin mensajes de progreso')


def construir_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='lunes',
        description='Simulador de protocolos de diseminación sobre redes no estructuradas',
    )
    sub = parser.add_subparsers(dest='verbo', required=True)

    gen = sub.add_parser('gen', help='genera o importa un corpus de grafos')
    gen.add_argument('--config', help='archivo clave=valor')
    gen.add_argument('--model', help='er o ba')
    gen.add_argument('--nodes')
    gen.add_argument('--edges')
    gen.add_argument('--m0')
    gen.add_argument('--m-attach')
    gen.add_argument('--count')
    gen.add_argument('--seed')
    gen.add_argument('--out')
    gen.add_argument('--label')
    gen.add_argument('--workers')
    gen.add_argument('--import', dest='importar', nargs='+', metavar='DOT',
                     help='importa archivos dot externos como corpus')
    gen.add_argument('--regenerate', metavar='CORPUS',
                     help='regenera un corpus desde su manifiesto')
    gen.add_argument('--quiet', action='store_true')
    gen.set_defaults(funcion=cmd_gen)

    sim = sub.add_parser('sim', help='simula un protocolo sobre un corpus')
    sim.add_argument('--corpus', help='directorio del corpus')
    sim.add_argument('--out', help='directorio de trazas y estadísticas')
    sim.add_argument('--jobs', help='grafos simulados en paralelo')
    _agregar_flags_sim(sim)
    sim.set_defaults(funcion=cmd_sim)

    analyze = sub.add_parser('analyze', help='reportes a partir de trazas o estadísticas')
    analyze.add_argument('--config', help='archivo clave=valor')
    analyze.add_argument('--trace', nargs='+', metavar='TRACE')
    analyze.add_argument('--stats', nargs='+', metavar='STATS')
    analyze.add_argument('--report', choices=REPORTES_DISPONIBLES)
    analyze.add_argument('--out', help='archivo de salida (por defecto stdout)')
    analyze.add_argument('--jobs', help='trazas analizadas en paralelo')
    analyze.set_defaults(funcion=cmd_analyze)

    bench = sub.add_parser('bench', help='compara las cinco configuraciones de LPs')
    bench.add_argument('--corpus', help='directorio del corpus')
    bench.add_argument('--scenarios', choices=ESCENARIOS_BENCH,
                       help='usa los cuatro escenarios de referencia')
    bench.add_argument('--graphs', help='grafos del corpus a ejecutar (por defecto 1)')
    bench.add_argument('--out', help='directorio de resultados (por defecto bench)')
    _agregar_flags_sim(bench)
    bench.set_defaults(funcion=cmd_bench)

    return parser


def _flags_de(args: argparse.Namespace) -> Dict[str, Optional[str]]:
    flags = {nombre.replace('-', '_'): getattr(args, nombre.replace('-', '_')) for nombre, _ in _FLAGS_SIM}
    flags['corpus'] = getattr(args, 'corpus', None)
    return flags


def _ajustes_de(args: argparse.Namespace) -> AjustesEjecucion:
    """Ajustes de ejecución con capas archivo < LUNES_* < flags."""
    flags = {clave: getattr(args, clave) for clave in CLAVES_EJECUCION if hasattr(args, clave)}
    return cargar_ajustes_ejecucion(args.config, flags=flags)


# ============================================================================
# GEN
# ============================================================================

def _salida_gen(args: argparse.Namespace) -> Optional[str]:
    """Directorio de salida de --regenerate e --import (archivo < LUNES_OUT < --out)."""
    if args.out:
        return args.out
    valores = leer_archivo_configuracion(args.config) if args.config else {}
    valores.update(leer_entorno(conocidas={'out'}))
    return valores.get('out')


def cmd_gen(args: argparse.Namespace) -> int:
    verbose = not args.quiet
    if args.regenerate:
        out = _salida_gen(args)
        if not out:
            raise InputError("--regenerate requiere --out")
        corpus = regenerate_corpus(args.regenerate, out)
        if verbose:
            print(f"✓ Corpus regenerado en {out} ({len(corpus.graphs)} grafos)")
        return 0

    if args.importar:
        out = _salida_gen(args)
        if not out:
            raise InputError("--import requiere --out")
        corpus = import_corpus(args.importar, out, label=args.label, verbose=verbose)
        if verbose:
            _imprimir_estadisticas(corpus)
        return 0

    config = cargar_configuracion_corpus(
        args.config,
        flags={
            'model': args.model, 'nodes': args.nodes, 'edges': args.edges, 'm0': args.m0,
            'm_attach': args.m_attach, 'count': args.count, 'seed': args.seed,
            'out': args.out, 'label': args.label, 'workers': args.workers,
        },
    )
    corpus = corpus_generate(
        config.model, config.parametros_modelo(), config.count, config.seed, config.out,
        label=config.label, workers=config.workers, verbose=verbose,
    )
    if verbose:
        _imprimir_estadisticas(corpus)
    return 0


def _imprimir_estadisticas(corpus: Corpus) -> None:
    tabla = corpus_statistics(corpus)
    print(f"\n📊 Corpus '{corpus.label}': {len(corpus.graphs)} grafos")
    print(f"   - Grado medio: {tabla['mean_degree'].mean():.3f}")
    print(f"   - Grado máximo: {int(tabla['max_degree'].max())}")
    print(f"   - Grafos conexos: {int(tabla['connected'].sum())}/{len(tabla)}")


# ============================================================================
# SIM
# ============================================================================

def resolver_ttls(config: ScenarioConfig, grafos: Sequence[Graph]) -> List[int]:
    """TTL de cada grafo; se calcula antes de simular para fallar sin efectos."""
    fijo = config.ttl_fijo()
    return [fijo if fijo is not None else ttl_automatico(g) for g in grafos]


def simular_corpus(config: ScenarioConfig, corpus: Corpus, out: Path, jobs: int = 1,
                   verbose: bool = False) -> List[Tuple[str, EngineStats]]:
    """
    Simula cada grafo del corpus; escribe graph_XXX.trace, .stats y .csv.

    Returns:
        Lista de (nombre del grafo, EngineStats) en el orden del corpus
    """
    protocolo = crear_protocolo(config)
    ttls = resolver_ttls(config, corpus.graphs)
    if not config.scenario:
        config = config.con(scenario=corpus.label)
    out.mkdir(parents=True, exist_ok=True)

    def simular(k: int) -> Tuple[str, EngineStats]:
        nombre = nombre_grafo(k)
        with open(out / f'{nombre}.trace', 'w', encoding='ascii', newline='\n') as salida:
            _, stats = run(config, corpus.graphs[k], protocolo, salida=salida, ttl=ttls[k])
        stats.label = nombre
        guardar_stats(stats, out / f'{nombre}.stats')
        return nombre, stats

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        resultados = list(pool.map(simular, range(len(corpus.graphs))))

    if verbose:
        for (nombre, stats), ttl in zip(resultados, ttls):
            print(f"  ✓ {nombre}: ttl={ttl}, mensajes={stats.total_messages}, "
                  f"inter-LP={stats.inter_lp_ratio:.3f}, migraciones={stats.migrations}, "
                  f"WCT={stats.wct_seconds:.2f}s")
    return resultados


def cmd_sim(args: argparse.Namespace) -> int:
    config = cargar_configuracion(args.config, flags=_flags_de(args))
    ajustes = _ajustes_de(args)
    verbose = not ajustes.quiet
    if not config.corpus:
        raise InputError("sim requiere --corpus")
    corpus = load_corpus(config.corpus)
    out = Path(ajustes.out) if ajustes.out else Path('runs') / corpus.label

    if verbose:
        print(f"\n{'#'*70}")
        print(f"# SIMULACIÓN DEL CORPUS '{corpus.label}' ({len(corpus.graphs)} grafos)")
        print(f"{'#'*70}\n")
        mostrar_configuracion(config.como_diccionario())

    simular_corpus(config, corpus, out, jobs=ajustes.jobs, verbose=verbose)

    if verbose:
        print(f"\n✓ Trazas y estadísticas en: {out}")
    return 0


# ============================================================================
# ANALYZE
# ============================================================================

def _reporte_traza(ruta: str, por_mensaje: bool = False):
    with open(ruta, encoding='ascii') as f:
        parser = parse_trace(f)
        metadata = parser.leer_cabecera()
        if not metadata.get('n', '').isdigit():
            raise InputError(f"{ruta}: la cabecera no indica 'n'")
        return dissemination_report(parser, int(metadata['n']), label=Path(ruta).stem,
                                    por_mensaje=por_mensaje)


def _integridad_traza(ruta: str):
    with open(ruta, encoding='ascii') as f:
        parser = parse_trace(f)
        metadata = parser.leer_cabecera()
        return Path(ruta).stem, check_integrity(parser, metadata)


def _concatenar(tablas: Sequence[pd.DataFrame]) -> pd.DataFrame:
    no_vacias = [t for t in tablas if not t.empty]
    if not no_vacias:
        return tablas[0]
    return pd.concat(no_vacias, ignore_index=True)


def cmd_analyze(args: argparse.Namespace) -> int:
    ajustes = _ajustes_de(args)
    if ajustes.report is None:
        raise InputError("analyze requiere --report")
    salida = ajustes.out if ajustes.out else sys.stdout

    if ajustes.report == 'speedup':
        if not ajustes.stats:
            raise InputError("--report speedup requiere --stats")
        ejecuciones = []
        for ruta in ajustes.stats:
            stats = load_stats(ruta)
            ejecuciones.append((stats.label or Path(ruta).stem, stats))
        reporte = speedup_report(ejecuciones)
        escribir_reporte({'baseline': reporte.baseline}, reporte.tabla(), salida)
        return 0

    if not ajustes.trace:
        raise InputError(f"--report {ajustes.report} requiere --trace")

    with ThreadPoolExecutor(max_workers=ajustes.jobs) as pool:
        if ajustes.report == 'integrity':
            resultados = list(pool.map(_integridad_traza, ajustes.trace))
        else:
            por_mensaje = ajustes.report == 'coverage'
            reportes = list(pool.map(lambda ruta: _reporte_traza(ruta, por_mensaje), ajustes.trace))

    if ajustes.report == 'integrity':
        tabla = pd.DataFrame(
            [{'trace': nombre, 'events': r.eventos, 'violations': len(r.violaciones)}
             for nombre, r in resultados],
            columns=['trace', 'events', 'violations'],
        )
        fallidas = [(nombre, r) for nombre, r in resultados if not r.ok]
        escribir_reporte({'traces': str(len(resultados)), 'failed': str(len(fallidas))}, tabla, salida)
        if fallidas:
            nombre, r = fallidas[0]
            raise IntegrityError(f"{nombre}: {r.violaciones[0]}")
        return 0

    corpus = aggregate_corpus(reportes)
    resumen = corpus.como_diccionario()
    if ajustes.report == 'messages':
        tabla = corpus.tabla()[['graph', 'generated', 'delivered', 'duplicates', 'control_messages']]
    elif ajustes.report == 'coverage':
        # una fila por mensaje de cada grafo
        tabla = _concatenar([r.tabla_cobertura() for r in reportes])
    else:
        total = corpus.hop_histogram()
        cantidad = sum(total.values())
        resumen = dict(resumen)
        resumen['mean_hops'] = repr(
            sum(h * c for h, c in total.items()) / cantidad if cantidad else 0.0
        )
        tabla = _concatenar([r.tabla_saltos() for r in reportes])
    escribir_reporte(resumen, tabla, salida)
    return 0


# ============================================================================
# BENCH
# ============================================================================

def combinar_stats(lista: Sequence[EngineStats], label: str) -> EngineStats:
    """Suma contadores y WCT de varias ejecuciones; la serie es la media por paso."""
    combinado = EngineStats(lp_count=lista[0].lp_count, gaia=lista[0].gaia,
                            steps=lista[0].steps, label=label)
    for s in lista:
        combinado.total_messages += s.total_messages
        combinado.intra_lp_messages += s.intra_lp_messages
        combinado.inter_lp_messages += s.inter_lp_messages
        combinado.control_messages += s.control_messages
        combinado.migrations += s.migrations
        combinado.migration_cost_units += s.migration_cost_units
        combinado.wct_seconds += s.wct_seconds
    combinado.serie_inter = np.mean([s.serie_inter for s in lista], axis=0).tolist()
    combinado.poblaciones = lista[0].poblaciones
    return combinado


def ejecutar_bench(config: ScenarioConfig, grafos: Sequence[Graph], out: Path,
                   ttls: Sequence[int], verbose: bool = False) -> List[Tuple[str, EngineStats]]:
    """
    Ejecuta los grafos en las cinco configuraciones (una tras otra, para no
    mezclar mediciones de WCT) y verifica que las líneas G/R/D coincidan.

    Raises:
        InvariantViolation: alguna configuración produjo una traza distinta
    """
    protocolo = crear_protocolo(config)
    out.mkdir(parents=True, exist_ok=True)
    huellas_referencia: Optional[List[str]] = None
    ejecuciones = []

    for lp, gaia in CONFIGURACIONES_BENCH:
        etiqueta = etiqueta_configuracion(lp, gaia)
        variante = config.con(lp=lp, gaia=gaia)
        huellas, corridas = [], []
        for grafo, ttl in zip(grafos, ttls):
            huella = HuellaProtocolo()
            _, stats = run(variante, grafo, protocolo, salida=huella, ttl=ttl)
            huellas.append(huella.hexdigest())
            corridas.append(stats)

        if huellas_referencia is None:
            huellas_referencia = huellas
        elif huellas != huellas_referencia:
            raise InvariantViolation(
                f"la configuración {etiqueta} produjo líneas G/R/D distintas de lp1"
            )

        stats = combinar_stats(corridas, etiqueta)
        guardar_stats(stats, out / f'{etiqueta}.stats')
        ejecuciones.append((etiqueta, stats))
        if verbose:
            print(f"  ✓ {etiqueta:10s} WCT={stats.wct_seconds:.2f}s  "
                  f"inter-LP={stats.inter_lp_ratio:.3f}  migraciones={stats.migrations}")

    reporte = speedup_report(ejecuciones)
    reporte.tabla().to_csv(out / 'speedup.csv', index=False)
    if verbose:
        print("  ✓ Trazas equivalentes en las cinco configuraciones")
        for etiqueta, valor in reporte.speedup.items():
            print(f"    - {etiqueta}: speedup {valor:.3f}")
    return ejecuciones


def cmd_bench(args: argparse.Namespace) -> int:
    config = cargar_configuracion(args.config, flags=_flags_de(args))
    ajustes = _ajustes_de(args)
    verbose = not ajustes.quiet
    out = Path(ajustes.out) if ajustes.out else Path('bench')

    if ajustes.scenarios == 'table1':
        for nombre, escenario in ESCENARIOS_TABLA1.items():
            if verbose:
                print(f"\n{'='*70}")
                print(f"ESCENARIO {nombre}: n={escenario['n']}, e={escenario['e']}")
                print(f"{'='*70}")
            corpus = corpus_generate(
                'er', {'n': escenario['n'], 'm': escenario['e']}, ajustes.graphs, config.seed,
                out / 'corpora' / nombre, label=nombre,
            )
            ttl = config.ttl_fijo() if config.ttl_fijo() is not None else escenario['ttl']
            ejecutar_bench(config.con(scenario=nombre), corpus.graphs, out / nombre,
                           [ttl] * len(corpus.graphs), verbose=verbose)
        return 0

    if not config.corpus:
        raise InputError("bench requiere --corpus o --scenarios table1")
    corpus = load_corpus(config.corpus)
    grafos = corpus.graphs[:ajustes.graphs]
    ttls = resolver_ttls(config, grafos)
    if verbose:
        print(f"\n{'#'*70}")
        print(f"# BENCH DEL CORPUS '{corpus.label}' ({len(grafos)} grafos)")
        print(f"{'#'*70}\n")
    ejecutar_bench(config.con(scenario=config.scenario or corpus.label), grafos, out, ttls, verbose=verbose)
    return 0


# ============================================================================
# ENTRADA
# ============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = construir_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return args.funcion(args)
    except Exception as e:
        print(f"✗ {type(e).__name__}: {e}", file=sys.stderr)
        return codigo_salida_para(e)
