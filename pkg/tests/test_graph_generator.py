# tests/test_graph_generator.py

import pytest

from src.data.graph import Graph
from src.data.graph_generator import gen_barabasi_albert, gen_erdos_renyi
from src.utils.validators import InvalidParameterError


def test_erdos_renyi_tamano_exacto():
    g = gen_erdos_renyi(200, 400, seed=3)
    assert g.node_count == 200
    assert g.edge_count == 400


def test_erdos_renyi_triangulo_forzado():
    g = gen_erdos_renyi(3, 3, seed=123)
    assert g.sorted_edges() == ((0, 1), (0, 2), (1, 2))


def test_erdos_renyi_determinista():
    assert gen_erdos_renyi(10, 20, seed=7) == gen_erdos_renyi(10, 20, seed=7)


def test_erdos_renyi_grafo_denso():
    # m cerca del máximo: se muestrean las aristas ausentes
    g = gen_erdos_renyi(12, 60, seed=1)
    assert g.edge_count == 60


def test_erdos_renyi_sin_lazos_ni_duplicados():
    g = gen_erdos_renyi(50, 200, seed=5)
    assert all(u < v for u, v in g.edges)
    assert len(set(g.edges)) == 200


def test_erdos_renyi_m_fuera_de_rango():
    with pytest.raises(InvalidParameterError, match='edges'):
        gen_erdos_renyi(3, 99, seed=1)


def test_barabasi_albert_sin_crecimiento_es_clique():
    g = gen_barabasi_albert(5, 5, 2, seed=9)
    assert g.edge_count == 10


def test_barabasi_albert_numero_de_aristas():
    g = gen_barabasi_albert(100, 3, 2, seed=1)
    assert g.edge_count == 3 + 2 * 97


def test_barabasi_albert_cola_mas_pesada_que_er():
    for seed in range(10):
        ba = gen_barabasi_albert(1000, 5, 3, seed=seed)
        er = gen_erdos_renyi(1000, ba.edge_count, seed=seed)
        assert max(ba.degrees()) > max(er.degrees())


@pytest.mark.parametrize('n, m0, m_attach', [(10, 2, 3), (10, 3, 0), (2, 3, 1)])
def test_barabasi_albert_parametros_invalidos(n, m0, m_attach):
    with pytest.raises(InvalidParameterError):
        gen_barabasi_albert(n, m0, m_attach, seed=0)


def test_graph_rechaza_aristas_duplicadas():
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_graph_vecinos_ordenados():
    g = Graph.from_edges(4, [(3, 0), (0, 1), (2, 0)])
    assert g.neighbors(0) == (1, 2, 3)
    assert g.isolated_nodes() == ()
