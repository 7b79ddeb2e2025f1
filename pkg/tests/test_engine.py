# tests/test_engine.py

import pytest

from config.escenario import ScenarioConfig
from src.analysis.trace_format import lineas_protocolo, parse_trace
from src.data.graph import Graph
from src.models.envelope import TipoMensaje
from src.models.protocols import Protocol
from src.models.simulation_engine import (
    EngineStats,
    SimulationEngine,
    etiqueta_configuracion,
    guardar_stats,
    load_stats,
    run,
)
from src.utils.calculations import calcular_tope_carga
from src.utils.validators import InputError, InvalidParameterError, ModelError


class Guionizado(Protocol):
    """El nodo 0 envía tres copias a 1 en t=5, en orden de seq 2, 0, 1."""

    def on_timestep(self, state, t, ctx):
        if state.node_id == 0 and t == 5:
            for seq in (2, 0, 1):
                ctx.send(0, 1, TipoMensaje.DATA, 0, seq, 0, 1)

    def gossip(self, state, msg, arrived_from, t, ctx):
        return 0


class DestinoInexistente(Protocol):
    def on_timestep(self, state, t, ctx):
        ctx.send(state.node_id, 99, TipoMensaje.DATA, state.node_id, 0, 1, 1)

    def gossip(self, state, msg, arrived_from, t, ctx):
        return 0


@pytest.fixture
def par():
    return Graph.from_edges(2, [(0, 1)])


def _cuerpo(texto):
    return [linea for linea in texto.splitlines() if not linea.startswith('#')]


def test_traza_exacta_de_dos_nodos(par):
    config = ScenarioConfig(protocol='broadcast', gen_prob=1.0, ttl=1, steps=2)
    texto, stats = run(config, par)
    assert _cuerpo(texto) == [
        'G 0 0 0:0',
        'G 0 1 1:0',
        'R 1 1 0:0 1',
        'R 1 0 1:0 1',
        'G 1 0 0:1',
        'G 1 1 1:1',
    ]
    assert stats.total_messages == 4
    assert stats.intra_lp_messages == 4


def test_mensajes_entre_lps(par):
    config = ScenarioConfig(protocol='broadcast', gen_prob=1.0, ttl=1, steps=2, lp=2)
    _, stats = run(config, par)
    assert stats.inter_lp_messages == 4
    assert stats.intra_lp_messages == 0
    assert stats.inter_lp_ratio == 1.0


def test_lookahead_unitario_y_orden_canonico(triangulo):
    config = ScenarioConfig(protocol='fixed', gen_prob=0.0, ttl=2, steps=8)
    texto, stats = run(config, triangulo, protocol=Guionizado(gen_prob=0.0))
    recepciones = [e for e in parse_trace(texto) if e.kind == 'R']
    assert [(e.t, e.seq) for e in recepciones] == [(6, 0), (6, 1), (6, 2)]
    assert stats.total_messages == 3


def test_envios_visibles_con_verbosidad_2(triangulo):
    config = ScenarioConfig(protocol='fixed', gen_prob=0.0, ttl=2, steps=8, verbosity=2)
    texto, _ = run(config, triangulo, protocol=Guionizado(gen_prob=0.0))
    envios = [e for e in parse_trace(texto) if e.kind == 'S']
    assert [(e.t, e.seq, e.dest) for e in envios] == [(5, 2, 1), (5, 0, 1), (5, 1, 1)]


def test_un_paso_sin_generacion(triangulo):
    config = ScenarioConfig(protocol='fixed', gen_prob=0.0, ttl=2, steps=1)
    texto, stats = run(config, triangulo)
    assert _cuerpo(texto) == []
    assert (stats.total_messages, stats.migrations, stats.control_messages) == (0, 0, 0)


def test_steps_cero_no_permitido():
    with pytest.raises(InvalidParameterError):
        ScenarioConfig(steps=0)


def test_destino_inexistente_es_error_del_modelo(triangulo):
    config = ScenarioConfig(protocol='fixed', ttl=2, steps=3)
    with pytest.raises(ModelError):
        run(config, triangulo, protocol=DestinoInexistente())


def test_cabecera_con_ttl_automatico(er_pequeno):
    config = ScenarioConfig(protocol='adaptive', steps=2, seed=9, scenario='prueba')
    texto, _ = run(config, er_pequeno)
    cabecera = parse_trace(texto).leer_cabecera()
    assert cabecera['ttl'] == '5'
    assert cabecera['n'] == '30'
    assert cabecera['e'] == '60'
    assert cabecera['protocol'] == 'adaptive'
    assert cabecera['alpha'] == '0.5'
    assert cabecera['format_version'] == '1'
    assert 'delta' not in cabecera


@pytest.mark.parametrize('protocolo', ['fixed', 'adaptive'])
def test_traza_independiente_de_la_particion(er_pequeno, protocolo):
    base = ScenarioConfig(protocol=protocolo, prob=0.7, gen_prob=0.05, ttl=4, steps=80, seed=5,
                          recv_window=20, window=10, k_mig=5, theta=1.2)
    referencia = lineas_protocolo(run(base, er_pequeno)[0])
    assert referencia
    variantes = [
        base.con(lp=2),
        base.con(lp=4),
        base.con(lp=2, gaia=True),
        base.con(lp=4, gaia=True),
        base.con(lp=4, gaia=True, workers=4),
    ]
    for config in variantes:
        assert lineas_protocolo(run(config, er_pequeno)[0]) == referencia


def test_hilos_no_cambian_la_traza(er_pequeno):
    base = ScenarioConfig(protocol='fixed', prob=0.7, gen_prob=0.05, ttl=4, steps=50,
                          lp=4, gaia=True, k_mig=5, theta=1.2)
    secuencial, _ = run(base, er_pequeno)
    paralelo, _ = run(base.con(workers=4), er_pequeno)
    assert paralelo == secuencial


def test_tope_de_carga_tras_migraciones(er_pequeno):
    config = ScenarioConfig(protocol='broadcast', gen_prob=0.1, ttl=3, steps=60, lp=4,
                            gaia=True, k_mig=2, window=10, theta=1.1, delta=0.2)
    texto, stats = run(config, er_pequeno)
    tope = calcular_tope_carga(30, 4, 0.2)
    assert all(max(poblacion) <= tope for poblacion in stats.poblaciones)
    assert all(sum(poblacion) == 30 for poblacion in stats.poblaciones)
    migraciones = [e for e in parse_trace(texto) if e.kind == 'M']
    assert len(migraciones) == stats.migrations
    assert all(e.t % 2 == 0 for e in migraciones)
    if stats.migrations:
        assert stats.migration_cost_units > 0


def test_contadores_consistentes(er_pequeno, config_base):
    _, stats = run(config_base.con(lp=4), er_pequeno)
    assert stats.intra_lp_messages + stats.inter_lp_messages == stats.total_messages
    assert len(stats.serie_inter) == config_base.steps
    assert stats.wct_seconds >= 0.0


def test_reproducible(er_pequeno, config_base):
    assert run(config_base, er_pequeno)[0] == run(config_base, er_pequeno)[0]


def test_motor_paso_a_paso(er_pequeno, config_base):
    motor = SimulationEngine(config_base, er_pequeno)
    eventos = [motor.paso(t) for t in range(config_base.steps)]
    assert all(e.t == t for t, paso in enumerate(eventos) for e in paso)


def test_guardar_y_leer_estadisticas(tmp_path, er_pequeno, config_base):
    _, stats = run(config_base.con(lp=2, gaia=True), er_pequeno)
    ruta = guardar_stats(stats, tmp_path / 'lp2-gaia.stats')
    leidas = load_stats(ruta)
    assert leidas.total_messages == stats.total_messages
    assert leidas.inter_lp_messages == stats.inter_lp_messages
    assert leidas.lp_count == 2 and leidas.gaia
    assert leidas.label == 'lp2-gaia'
    assert leidas.serie_inter == pytest.approx(stats.serie_inter)
    assert (tmp_path / 'lp2-gaia.csv').exists()


def test_estadisticas_inexistentes(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_stats(tmp_path / 'nada.stats')


def test_estadisticas_mal_formadas(tmp_path):
    ruta = tmp_path / 'malo.stats'
    ruta.write_text('total_messages=muchos\n')
    with pytest.raises(InputError):
        load_stats(ruta)


def test_cuartiles_de_la_serie():
    stats = EngineStats(serie_inter=[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.2, 0.2])
    assert stats.cuartiles_inter() == pytest.approx((1.0, 0.2))


def test_etiquetas():
    assert etiqueta_configuracion(1, False) == 'lp1'
    assert etiqueta_configuracion(4, True) == 'lp4-gaia'
