# config/costos.py
# Modelo de costo de las migraciones de entidades entre LPs

"""
PROPÓSITO:
-----------
Cada migración de una entidad transfiere su estado al LP destino. El costo se
contabiliza en EngineStats.migration_cost_units como bytes modelados; nunca se
suma al tiempo simulado, de modo que migrar no altera la semántica.

COMPONENTES DEL ESTADO:
-----------------------
1. Base: identificador, contadores de secuencia, probabilidad de generación
2. Vecinos: un id por vecino
3. Mensajes vistos: un par (origen, seq) por mensaje recibido o generado
4. Ventana de interacciones: un contador por (destino, paso) vivo en la ventana
5. Extensión adaptativa: contadores de recepción, proveedores y estímulos activos
"""

# ============================================================================
# CONFIGURACIÓN DE COSTOS (bytes por componente)
# ============================================================================

COSTOS_ESTADO = {
    'base': 64,
    'por_vecino': 8,
    'por_mensaje_visto': 16,
    'por_interaccion': 12,
    'por_entrada_adaptativa': 24,
}


# ============================================================================
# FUNCIONES DE UTILIDAD
# ============================================================================

def calcular_costo_migracion(num_vecinos, num_vistos, num_interacciones=0,
                             num_adaptativas=0, costos=None):
    """
    Calcula los bytes transferidos al migrar una entidad.

    Args:
        num_vecinos (int): grado de la entidad
        num_vistos (int): tamaño del conjunto de mensajes vistos
        num_interacciones (int): contadores vivos en la ventana de auditoría
        num_adaptativas (int): entradas de estado del protocolo adaptativo
        costos (dict, optional): tabla alternativa a COSTOS_ESTADO

    Returns:
        int: unidades de costo (bytes modelados)

    Ejemplo:
        >>> calcular_costo_migracion(num_vecinos=4, num_vistos=10)
        256  # 64 + 4*8 + 10*16
    """
    costos = costos or COSTOS_ESTADO
    return (
        costos['base']
        + num_vecinos * costos['por_vecino']
        + num_vistos * costos['por_mensaje_visto']
        + num_interacciones * costos['por_interaccion']
        + num_adaptativas * costos['por_entrada_adaptativa']
    )
