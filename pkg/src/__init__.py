# src/__init__.py
# Módulo principal del código fuente

"""
Módulo raíz que contiene toda la lógica del simulador:
- data: Grafos, generadores, formato dot y corpus
- models: Motor de simulación, protocolos de diseminación y migración
- analysis: Formato de trazas y reportes
- utils: Validaciones, errores y cálculos auxiliares
- cli: Línea de comandos (gen, sim, analyze, bench)
"""
