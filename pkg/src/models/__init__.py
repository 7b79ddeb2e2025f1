# src/models/__init__.py
# Módulo del motor de simulación y de los protocolos

"""
Este módulo contiene:
- Motor de pasos de tiempo con LPs y barrera por paso
- Protocolos de diseminación: broadcast, probabilidad fija y adaptativo
- Agrupamiento de entidades y migración (GAIA)
- Generador de números aleatorios por entidad
"""

from .simulation_engine import EngineStats, SimulationEngine, run
from .protocols import AdaptiveGossip, Broadcast, FixedProbability, crear_protocolo
from .clustering import InteractionLedger, LpMap, migration_round, partition_static

__all__ = [
    'EngineStats',
    'SimulationEngine',
    'run',
    'Broadcast',
    'FixedProbability',
    'AdaptiveGossip',
    'crear_protocolo',
    'LpMap',
    'InteractionLedger',
    'migration_round',
    'partition_static',
]
