# src/data/__init__.py
# Módulo de grafos y corpus

"""
Este módulo maneja todo lo relacionado con:
- Representación inmutable de grafos no dirigidos
- Generación Erdős–Rényi y Barabási–Albert con semilla
- Lectura y escritura en formato dot
- Corpus de grafos con manifiesto regenerable
"""

from .graph import Graph
from .graph_generator import gen_barabasi_albert, gen_erdos_renyi
from .dot_io import export_dot, import_dot
from .graph_processor import degree_summary, ttl_estimate
from .corpus import Corpus, corpus_generate, load_corpus

__all__ = [
    'Graph',
    'gen_erdos_renyi',
    'gen_barabasi_albert',
    'import_dot',
    'export_dot',
    'degree_summary',
    'ttl_estimate',
    'Corpus',
    'corpus_generate',
    'load_corpus',
]
