# config/__init__.py
# Módulo de configuración del simulador

"""
Centraliza la configuración:
- Valores por defecto y escenarios de referencia (parametros.py)
- Configuración de escenarios y corpus con cargador por capas (escenario.py)
- Modelo de costo de las migraciones (costos.py)

EJEMPLO DE USO:
---------------
from config import cargar_configuracion, ESCENARIOS_TABLA1

config = cargar_configuracion(flags={'protocol': 'adaptive', 'lp': 4})
print(ESCENARIOS_TABLA1['s1'])
"""

from config.costos import COSTOS_ESTADO, calcular_costo_migracion
from config.escenario import CorpusConfig, ScenarioConfig, cargar_configuracion
from config.parametros import (
    CONFIGURACIONES_BENCH,
    ESCENARIOS_TABLA1,
    PARAMETROS,
    mostrar_configuracion,
)

__all__ = [
    # Parámetros
    'PARAMETROS',
    'ESCENARIOS_TABLA1',
    'CONFIGURACIONES_BENCH',
    'mostrar_configuracion',

    # Escenarios
    'ScenarioConfig',
    'CorpusConfig',
    'cargar_configuracion',

    # Costos
    'COSTOS_ESTADO',
    'calcular_costo_migracion',
]
