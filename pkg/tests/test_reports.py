# tests/test_reports.py

import io

import pytest

from config.escenario import ScenarioConfig
from src.analysis.reports import (
    VentanaMensajes,
    VerificadorIntegridad,
    aggregate_corpus,
    check_integrity,
    dissemination_report,
    escribir_reporte,
    speedup_report,
)
from src.analysis.trace_format import parse_trace
from src.data.graph_processor import flooding_oracle
from src.models.simulation_engine import EngineStats, run
from src.utils.validators import InputError, IntegrityError
from tests.conftest import BroadcastUnOrigen

TRAZA = """# n=4
# ttl=3
# steps=5
G 0 0 0:0
R 1 1 0:0 1
R 1 2 0:0 1
G 1 3 3:0
D 2 2 0:0
R 2 3 0:0 2
C 2 1 3 0
"""


def test_reporte_de_diseminacion():
    reporte = dissemination_report(parse_trace(TRAZA), n=4)
    assert reporte.generated == 2
    assert reporte.delivered == 3
    assert reporte.duplicates == 1
    assert reporte.control_messages == 1
    assert reporte.coverage == {(0, 0): 1.0, (3, 0): 0.0}
    assert reporte.mean_coverage == 0.5
    assert reporte.hop_histogram == {1: 2, 2: 1}
    assert reporte.mean_hops == pytest.approx(4 / 3)


def test_recepcion_sin_generacion():
    with pytest.raises(IntegrityError):
        dissemination_report(parse_trace("R 1 1 5:0 1\n"), n=3)


def test_cobertura_completa_con_inundacion(er_pequeno):
    ttl = 10
    config = ScenarioConfig(protocol='broadcast', gen_prob=1.0, ttl=ttl, steps=ttl + 2)
    texto, _ = run(config, er_pequeno, protocol=BroadcastUnOrigen(gen_prob=1.0))
    receptores = {e.node for e in parse_trace(texto) if e.kind == 'R'}
    assert receptores == flooding_oracle(er_pequeno, 0, ttl)


def test_v_cero_cobertura_nula(er_pequeno):
    config = ScenarioConfig(protocol='fixed', prob=0.0, gen_prob=0.2, ttl=3, steps=10)
    texto, _ = run(config, er_pequeno)
    reporte = dissemination_report(parse_trace(texto), er_pequeno.node_count)
    assert reporte.delivered == 0
    assert reporte.generated > 0
    assert reporte.mean_coverage == 0.0


def test_agregado_no_ponderado():
    a = dissemination_report(parse_trace(TRAZA), n=4, label='a')
    b = dissemination_report(parse_trace("G 0 0 0:0\n"), n=4, label='b')
    corpus = aggregate_corpus([a, b])
    assert corpus.mean_delivered == 1.5
    assert corpus.mean_coverage == 0.25
    assert corpus.total_delivered == 3
    assert list(corpus.tabla()['graph']) == ['a', 'b']


def test_integridad_de_una_traza_real(er_pequeno):
    config = ScenarioConfig(protocol='adaptive', prob=0.6, gen_prob=0.1, ttl=4, steps=60,
                            recv_window=10, lp=2, gaia=True, k_mig=5, verbosity=2)
    texto, _ = run(config, er_pequeno)
    parser = parse_trace(texto)
    reporte = check_integrity(parser, parser.leer_cabecera())
    assert reporte.ok, reporte.violaciones
    assert reporte.eventos > 0


@pytest.mark.parametrize('cuerpo, fragmento', [
    ("G 0 1 1:0\nG 1 1 1:0\n", 'dos veces'),
    ("G 0 1 2:0\n", 'origen distinto'),
    ("G 0 1 1:0\nR 1 2 1:0 1\nR 2 2 1:0 2\n", 'repetido'),
    ("G 0 1 1:0\nR 1 1 1:0 1\n", 'propio mensaje'),
    ("G 0 1 1:0\nR 1 2 1:0 9\n", 'ttl'),
    ("G 2 1 1:0\nR 1 2 1:0 1\n", 'decreciente'),
    ("G 0 1 1:0\nS 0 1 1:0 2\nS 0 1 1:0 3\nR 1 2 1:0 1\n", 'conservación'),
])
def test_violaciones_de_integridad(cuerpo, fragmento):
    parser = parse_trace("# ttl=3\n# steps=10\n" + cuerpo)
    reporte = check_integrity(parser, parser.leer_cabecera())
    assert not reporte.ok
    assert any(fragmento in v for v in reporte.violaciones)


def _traza_larga(pasos: int, n: int = 4) -> str:
    """Un G por paso; cada mensaje llega a un solo vecino en el paso siguiente."""
    lineas = [f'# n={n}', '# ttl=2', f'# steps={pasos}']
    for t in range(pasos):
        if t > 0:
            previo = (t - 1) % n
            lineas.append(f'R {t} {(previo + 1) % n} {previo}:{(t - 1) // n} 1')
        origen = t % n
        lineas.append(f'G {t} {origen} {origen}:{t // n}')
        lineas.append(f'S {t} {origen} {origen}:{t // n} {(origen + 1) % n}')
    return '\n'.join(lineas) + '\n'


def test_integridad_con_memoria_acotada():
    parser = parse_trace(_traza_larga(2000))
    verificador = VerificadorIntegridad(parser.leer_cabecera())
    maximos = {'vivos': 0, 'envios': 0, 'recepciones': 0}
    for evento in parser:
        verificador.procesar(evento)
        maximos['vivos'] = max(maximos['vivos'], len(verificador.ventana.vivos))
        maximos['envios'] = max(maximos['envios'], len(verificador.envios))
        maximos['recepciones'] = max(maximos['recepciones'], len(verificador.recepciones))
    reporte = verificador.finalizar()

    assert reporte.ok, reporte.violaciones
    assert reporte.eventos == 3 * 2000 - 1
    # ttl=2: a lo sumo los mensajes de los pasos t-3..t
    assert maximos['vivos'] <= 4
    assert maximos['envios'] <= 2
    assert maximos['recepciones'] <= 2
    assert len(verificador.ventana.ultimo_seq) == 4


def test_diseminacion_sin_cobertura_por_mensaje():
    reporte = dissemination_report(parse_trace(_traza_larga(2000)), n=4, por_mensaje=False)
    assert reporte.coverage == {}
    assert reporte.generated == 2000
    assert reporte.delivered == 1999
    assert reporte.mean_coverage == pytest.approx((1999 / 3) / 2000)


def test_ventana_cierra_mensajes_viejos():
    ventana = VentanaMensajes(ttl=2)
    assert ventana.abrir((0, 0), 0)
    assert ventana.abrir((1, 0), 1)
    assert ventana.avanzar(3) == []
    assert [m for m, _ in ventana.avanzar(4)] == [(0, 0)]
    assert ventana.cerrado((0, 0))
    assert not ventana.cerrado((0, 1))
    assert not ventana.abrir((1, 0), 4)


def test_evento_despues_de_cerrado():
    texto = "# ttl=1\n# steps=10\nG 0 1 1:0\nR 5 2 1:0 1\n"
    parser = parse_trace(texto)
    reporte = check_integrity(parser, parser.leer_cabecera())
    assert any('cerrado' in v for v in reporte.violaciones)
    with pytest.raises(IntegrityError, match='cerrado'):
        dissemination_report(parse_trace(texto), n=3)


def _stats(lp, gaia, wct):
    return EngineStats(lp_count=lp, gaia=gaia, wct_seconds=wct)


def test_speedup_contra_si_mismo():
    reporte = speedup_report([('lp1', _stats(1, False, 3.0))])
    assert reporte.speedup == {'lp1': 1.0}


def test_speedup_mitad_de_tiempo():
    reporte = speedup_report([('lp1', _stats(1, False, 4.0)), ('lp2', _stats(2, False, 2.0))])
    assert reporte.speedup['lp2'] == 2.0
    assert reporte.baseline == 'lp1'


def test_speedup_sin_referencia():
    with pytest.raises(InputError):
        speedup_report([('lp2', _stats(2, False, 1.0)), ('lp4', _stats(4, True, 1.0))])


def test_speedup_dos_referencias():
    with pytest.raises(InputError):
        speedup_report([('a', _stats(1, False, 1.0)), ('b', _stats(1, False, 2.0))])


def test_reporte_determinista():
    salidas = []
    for _ in range(2):
        destino = io.StringIO()
        corpus = aggregate_corpus([dissemination_report(parse_trace(TRAZA), n=4, label='g')])
        escribir_reporte(corpus.como_diccionario(), corpus.tabla(), destino)
        salidas.append(destino.getvalue())
    assert salidas[0] == salidas[1]
    assert salidas[0].startswith('graphs=1\n')
