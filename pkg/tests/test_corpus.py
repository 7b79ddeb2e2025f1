# tests/test_corpus.py

import hashlib

import pytest

from src.data.corpus import (
    ARCHIVO_MANIFIESTO,
    corpus_generate,
    corpus_statistics,
    import_corpus,
    leer_manifiesto,
    load_corpus,
    regenerate_corpus,
)
from src.data.dot_io import guardar_dot
from src.data.graph import Graph
from src.utils.validators import InvalidParameterError


def _digest(directorio):
    h = hashlib.sha256()
    for ruta in sorted(directorio.iterdir()):
        h.update(ruta.name.encode())
        h.update(ruta.read_bytes())
    return h.hexdigest()


def test_generar_corpus_er(tmp_path):
    corpus = corpus_generate('er', {'n': 50, 'm': 100}, 4, 42, tmp_path / 's1')
    archivos = sorted(p.name for p in (tmp_path / 's1').glob('*.dot'))
    assert archivos == ['graph_000.dot', 'graph_001.dot', 'graph_002.dot', 'graph_003.dot']
    assert all(g.node_count == 50 and g.edge_count == 100 for g in corpus.graphs)
    assert corpus.label == 's1'


def test_corpus_de_un_grafo_tiene_manifiesto(tmp_path):
    corpus_generate('er', {'n': 10, 'm': 15}, 1, 3, tmp_path / 'uno')
    manifiesto = leer_manifiesto(tmp_path / 'uno')
    assert manifiesto['count'] == '1'
    assert manifiesto['model'] == 'er'


def test_grafos_del_corpus_son_distintos(tmp_path):
    corpus = corpus_generate('er', {'n': 30, 'm': 50}, 3, 42, tmp_path / 'c')
    assert corpus.graphs[0] != corpus.graphs[1]


def test_regenerar_es_identico_byte_a_byte(tmp_path):
    corpus_generate('ba', {'n': 40, 'm0': 3, 'm_attach': 2}, 3, 9, tmp_path / 'a', label='ba40')
    regenerate_corpus(tmp_path / 'a', tmp_path / 'b')
    assert _digest(tmp_path / 'a') == _digest(tmp_path / 'b')


def test_cargar_corpus(tmp_path):
    original = corpus_generate('er', {'n': 20, 'm': 30}, 2, 5, tmp_path / 'c')
    cargado = load_corpus(tmp_path / 'c')
    assert cargado.graphs == original.graphs
    assert cargado.params == {'n': 20, 'm': 30}
    assert cargado.master_seed == 5


def test_parametros_invalidos_no_escriben_nada(tmp_path):
    with pytest.raises(InvalidParameterError):
        corpus_generate('er', {'n': 3, 'm': 99}, 1, 1, tmp_path / 'malo')
    assert not (tmp_path / 'malo').exists()


def test_falta_manifiesto(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path)


def test_importar_con_ids_no_contiguos(tmp_path):
    (tmp_path / 'x.dot').write_text("graph G { a -- b; b -- c; }\n")
    guardar_dot(Graph.from_edges(3, [(0, 1), (0, 2)]), tmp_path / 'y.dot')
    corpus = import_corpus([tmp_path / 'x.dot', tmp_path / 'y.dot'], tmp_path / 'imp')
    assert corpus.model == 'imported'
    assert (tmp_path / 'imp' / 'graph_000.map').read_text() == '0 a\n1 b\n2 c\n'
    assert not (tmp_path / 'imp' / 'graph_001.map').exists()
    assert ARCHIVO_MANIFIESTO in {p.name for p in (tmp_path / 'imp').iterdir()}


def test_importar_tamanos_distintos(tmp_path):
    guardar_dot(Graph.from_edges(3, [(0, 1)]), tmp_path / 'a.dot')
    guardar_dot(Graph.from_edges(4, [(0, 1)]), tmp_path / 'b.dot')
    with pytest.raises(InvalidParameterError):
        import_corpus([tmp_path / 'a.dot', tmp_path / 'b.dot'], tmp_path / 'imp')


def test_estadisticas_del_corpus(tmp_path):
    corpus = corpus_generate('er', {'n': 30, 'm': 60}, 2, 1, tmp_path / 'c')
    tabla = corpus_statistics(corpus)
    assert len(tabla) == 2
    assert (tabla['lambda_ttl'] == 2.0).all()
