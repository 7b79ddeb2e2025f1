# tests/conftest.py
# Fixtures compartidas: grafos pequeños, configuraciones y un contexto falso

import pytest

from config.escenario import ScenarioConfig
from src.data.graph import Graph
from src.data.graph_generator import gen_erdos_renyi
from src.models.protocols import Broadcast, FixedProbability


class ContextoFalso:
    """Registra envíos y eventos como lo haría el motor, sin motor."""

    def __init__(self):
        self.envios = []
        self.eventos = []

    def send(self, remitente, dest, kind, origin, seq, ttl, hops, objetivo=None):
        self.envios.append({
            'remitente': remitente, 'dest': dest, 'kind': kind, 'origin': origin,
            'seq': seq, 'ttl': ttl, 'hops': hops, 'objetivo': objetivo,
        })

    def evento(self, kind, nodo, origin, seq, hops=None):
        self.eventos.append((kind, nodo, origin, seq, hops))


class _SoloOrigenCero:
    """Mezcla: solo el nodo 0 genera, una única vez en t=0."""

    def on_timestep_generate(self, state, t, ctx):
        if state.node_id != 0 or t != 0:
            return None
        return super().on_timestep_generate(state, t, ctx)


class BroadcastUnOrigen(_SoloOrigenCero, Broadcast):
    pass


class FixedUnOrigen(_SoloOrigenCero, FixedProbability):
    pass


@pytest.fixture
def triangulo():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def camino4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def er_pequeno():
    return gen_erdos_renyi(30, 60, seed=11)


@pytest.fixture
def contexto():
    return ContextoFalso()


@pytest.fixture
def config_base():
    """Configuración corta con TTL explícito (los grafos de prueba son pequeños)."""
    return ScenarioConfig(protocol='fixed', prob=0.5, gen_prob=0.1, ttl=4, steps=40, seed=7)
