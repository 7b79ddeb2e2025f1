# tests/test_graph_processor.py

import pytest

from src.data.graph import Graph
from src.data.graph_generator import gen_erdos_renyi
from src.data.graph_processor import (
    degree_summary,
    flooding_oracle,
    ttl_automatico,
    ttl_estimate,
    validar_grafo,
)
from src.utils.validators import DomainError


def test_resumen_triangulo(triangulo):
    resumen = degree_summary(triangulo)
    assert resumen.mean_degree_std == 2.0
    assert resumen.lambda_ttl == 1.0


def test_resumen_estrella():
    estrella = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    resumen = degree_summary(estrella)
    assert resumen.max_degree == 4
    assert resumen.min_degree == 1


def test_lambda_escenario_500():
    g = gen_erdos_renyi(500, 1000, seed=1)
    assert degree_summary(g).lambda_ttl == 2.0


@pytest.mark.parametrize('n, lam, esperado', [(200, 2, 8), (300, 2, 9), (500, 2, 9), (16, 4, 2)])
def test_ttl_estimate(n, lam, esperado):
    assert ttl_estimate(n, lam) == esperado


@pytest.mark.parametrize('lam', [1.1, 1.5, 2.0, 4.0, 10.0])
def test_ttl_no_decrece_con_n(lam):
    ttls = [ttl_estimate(n, lam) for n in range(2, 3001, 7)]
    assert all(a <= b for a, b in zip(ttls, ttls[1:]))


@pytest.mark.parametrize('n', [2, 10, 200, 500, 5000])
def test_ttl_no_crece_con_lambda(n):
    lams = [1.05 + 0.05 * k for k in range(200)]
    ttls = [ttl_estimate(n, lam) for lam in lams]
    assert all(a >= b for a, b in zip(ttls, ttls[1:]))


@pytest.mark.parametrize('lam', [1.0, 0.5])
def test_ttl_estimate_diverge(lam):
    with pytest.raises(DomainError):
        ttl_estimate(100, lam)


def test_ttl_automatico_usa_e_sobre_n():
    g = gen_erdos_renyi(200, 400, seed=4)
    assert ttl_automatico(g) == 8


def test_oraculo_de_inundacion(camino4):
    assert flooding_oracle(camino4, 0, 2) == {1, 2}
    assert flooding_oracle(camino4, 0, 3) == {1, 2, 3}


def test_validar_grafo_detecta_aislados():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    resultado = validar_grafo(g)
    assert resultado['num_componentes'] == 2
    assert not resultado['es_conexo']
