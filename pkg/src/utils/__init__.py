# src/utils/__init__.py
# Módulo de utilidades generales

"""
Funciones auxiliares utilizadas en múltiples partes del proyecto:
- Jerarquía de errores y códigos de salida
- Validaciones de parámetros
- Semillas derivadas y cálculos de carga
"""
