# src/utils/validators.py
# Validaciones de datos y parámetros + excepciones del simulador

"""
PROPÓSITO:
-----------
Valida parámetros y configuraciones para prevenir errores antes de cualquier
efecto secundario (escritura de corpus, trazas, estadísticas) y define la
jerarquía de excepciones que usa todo el proyecto.

Cada excepción lleva el código de salida que la línea de comandos devuelve:

    0  éxito
    1  error de entrada/salida (OSError)
    2  parámetro, uso o archivo de entrada mal formado
    3  violación de un invariante interno

EXCEPCIONES:
------------
LunesError
 ├── ValidationError                (código 2)
 │    ├── InvalidParameterError
 │    │    └── DomainError
 │    ├── ConfigurationError
 │    ├── InputError
 │    ├── IntegrityError
 │    ├── DotParseError
 │    │    └── UnsupportedFormatError
 │    └── TraceParseError
 ├── ModelError                     (código 3)
 └── InvariantViolation             (código 3)

EJEMPLO DE USO:
---------------
from src.utils.validators import validar_rango, InvalidParameterError

try:
    validar_rango(m, 0, n * (n - 1) // 2, 'edges')
except InvalidParameterError as e:
    print(f"✗ {e}")
"""

import math
from typing import Any, Optional


# ============================================================================
# EXCEPCIONES
# ============================================================================

class LunesError(Exception):
    """Raíz de todos los errores del simulador."""

    codigo_salida = 3


class ValidationError(LunesError):
    """Entrada inválida: parámetros, configuración o archivos."""

    codigo_salida = 2


class InvalidParameterError(ValidationError):
    pass


class DomainError(InvalidParameterError):
    """Parámetro fuera del dominio de una fórmula (ej: ln(λ) con λ ≤ 1)."""


class ConfigurationError(ValidationError):
    pass


class InputError(ValidationError):
    pass


class IntegrityError(ValidationError):
    """Una traza referencia un mensaje que nunca fue generado."""


class DotParseError(ValidationError):
    """Error de sintaxis en un archivo dot, con número de línea."""

    def __init__(self, mensaje: str, linea: Optional[int] = None):
        self.linea = linea
        if linea is not None:
            mensaje = f"línea {linea}: {mensaje}"
        super().__init__(mensaje)


class UnsupportedFormatError(DotParseError):
    """Construcción dot válida pero fuera del subconjunto soportado."""


class TraceParseError(ValidationError):
    def __init__(self, mensaje: str, linea: Optional[int] = None):
        self.linea = linea
        if linea is not None:
            mensaje = f"línea {linea}: {mensaje}"
        super().__init__(mensaje)


class ModelError(LunesError):
    """Un protocolo violó el contrato del motor (error del modelo)."""

    codigo_salida = 3


class InvariantViolation(LunesError):
    codigo_salida = 3


# ============================================================================
# VALIDACIONES GENÉRICAS
# ============================================================================

def validar_entero(valor: Any, nombre: str) -> int:
    """
    Convierte `valor` a entero o lanza InvalidParameterError.

    Acepta enteros y cadenas decimales; rechaza booleanos y flotantes
    con parte fraccionaria.
    """
    if isinstance(valor, bool):
        raise InvalidParameterError(f"'{nombre}' debe ser entero, recibido {valor!r}")
    if isinstance(valor, int):
        return valor
    if isinstance(valor, float) and valor.is_integer():
        return int(valor)
    if isinstance(valor, str):
        try:
            return int(valor.strip())
        except ValueError:
            pass
    raise InvalidParameterError(f"'{nombre}' debe ser entero, recibido {valor!r}")


def validar_real(valor: Any, nombre: str) -> float:
    if isinstance(valor, bool):
        raise InvalidParameterError(f"'{nombre}' debe ser numérico, recibido {valor!r}")
    try:
        real = float(valor)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"'{nombre}' debe ser numérico, recibido {valor!r}") from None
    if math.isnan(real):
        raise InvalidParameterError(f"'{nombre}' no puede ser NaN")
    return real


def validar_rango(valor, min_val=None, max_val=None, nombre: str = 'valor'):
    """
    Verifica min_val <= valor <= max_val (cualquiera de los extremos puede omitirse).

    Returns:
        El mismo valor, para encadenar.

    Raises:
        InvalidParameterError: el mensaje nombra el límite violado.
    """
    if min_val is not None and valor < min_val:
        raise InvalidParameterError(f"'{nombre}' = {valor} es menor que el mínimo {min_val}")
    if max_val is not None and valor > max_val:
        raise InvalidParameterError(f"'{nombre}' = {valor} excede el máximo {max_val}")
    return valor


def validar_probabilidad(valor: Any, nombre: str) -> float:
    return validar_rango(validar_real(valor, nombre), 0.0, 1.0, nombre)


def validar_booleano(valor: Any, nombre: str) -> bool:
    """Acepta on/off, true/false, yes/no, 1/0 (sin distinguir mayúsculas)."""
    if isinstance(valor, bool):
        return valor
    texto = str(valor).strip().lower()
    if texto in ('on', 'true', 'yes', '1'):
        return True
    if texto in ('off', 'false', 'no', '0'):
        return False
    raise InvalidParameterError(f"'{nombre}' debe ser on/off, recibido {valor!r}")


def validar_opcion(valor: Any, opciones, nombre: str) -> str:
    texto = str(valor).strip()
    if texto not in opciones:
        raise InvalidParameterError(
            f"'{nombre}' = {texto!r} no es válido. Use: {', '.join(sorted(opciones))}"
        )
    return texto


def codigo_salida_para(error: BaseException) -> int:
    """Traduce una excepción al código de salida de la línea de comandos."""
    if isinstance(error, LunesError):
        return error.codigo_salida
    if isinstance(error, OSError):
        return 1
    return 3
