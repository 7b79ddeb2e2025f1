# src/data/dot_io.py
# Importación y exportación de grafos en un subconjunto del lenguaje dot

"""
PROPÓSITO:
-----------
Intercambio de topologías con herramientas externas a través de archivos dot.

SUBCONJUNTO SOPORTADO:
----------------------
    graph <identificador> {
    <u> -- <v>;
    <u>;
    }

- Espacios y saltos de línea libres al importar (todo puede ir en una línea)
- Comentarios `//` hasta fin de línea
- El `;` final de cada sentencia es opcional (como en dot)
- `digraph`, `strict`, `->` y listas de atributos `[...]` se rechazan con
  UnsupportedFormatError; cualquier otra cosa con DotParseError

NORMALIZACIÓN DE IDS:
---------------------
Si los ids leídos son exactamente los enteros 0..n-1 se conservan. En otro
caso se renumeran 0..n-1 en orden de primera aparición y los ids originales
quedan en Graph.etiquetas.

La exportación es canónica: aristas ordenadas por (min, max), luego los nodos
aislados en orden ascendente. Grafos iguales producen bytes iguales.
"""

import re
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from src.data.graph import Graph, normalizar_arista
from src.utils.validators import DotParseError, UnsupportedFormatError

_TOKEN = re.compile(
    r'\s*(?:'
    r'(?P<arista>--)|(?P<dirigida>->)|(?P<simbolo>[{};\[\]=,])|'
    r'(?P<id>[A-Za-z0-9_.]+)|(?P<cadena>"(?:[^"\\]|\\.)*")|(?P<otro>\S)'
    r')'
)


def _tokenizar(texto: str) -> Iterator[Tuple[str, str, int]]:
    """Produce (tipo, valor, línea) ignorando comentarios //."""
    for num_linea, linea in enumerate(texto.splitlines(), start=1):
        linea = linea.split('//', 1)[0]
        pos = 0
        while pos < len(linea):
            coincidencia = _TOKEN.match(linea, pos)
            if coincidencia is None or coincidencia.end() == pos:
                break
            pos = coincidencia.end()
            tipo = coincidencia.lastgroup
            if tipo is None:
                continue
            valor = coincidencia.group(tipo)
            if tipo == 'cadena':
                tipo, valor = 'id', valor[1:-1]
            yield tipo, valor, num_linea


class _Lector:
    def __init__(self, texto: str):
        self.tokens: List[Tuple[str, str, int]] = list(_tokenizar(texto))
        self.pos = 0

    def ver(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def tomar(self):
        token = self.ver()
        if token is None:
            ultima = self.tokens[-1][2] if self.tokens else 1
            raise DotParseError("fin de archivo inesperado, falta '}'", ultima)
        self.pos += 1
        return token


def import_dot(texto: str) -> Graph:
    """
    Lee un grafo desde texto dot.

    Raises:
        UnsupportedFormatError: grafo dirigido, strict o con atributos
        DotParseError: sentencia mal formada (con número de línea)

    Ejemplo:
        >>> g = import_dot("graph G { 0 -- 1; 1 -- 2; }")
        >>> g.node_count, g.edge_count
        (3, 2)
    """
    lector = _Lector(texto)
    if lector.ver() is None:
        raise DotParseError("archivo vacío, se esperaba 'graph'", 1)

    tipo, valor, linea = lector.tomar()
    palabra = valor.lower() if tipo == 'id' else valor
    if palabra in ('digraph', 'strict'):
        raise UnsupportedFormatError(f"'{valor}' no está soportado (solo grafos no dirigidos)", linea)
    if palabra != 'graph':
        raise DotParseError(f"se esperaba 'graph', encontrado {valor!r}", linea)

    tipo, valor, linea = lector.tomar()
    if tipo == 'id':
        tipo, valor, linea = lector.tomar()
    if valor != '{':
        raise DotParseError(f"se esperaba '{{', encontrado {valor!r}", linea)

    orden: Dict[str, int] = {}
    pares: List[Tuple[str, str, int]] = []

    def registrar(nombre: str):
        if nombre not in orden:
            orden[nombre] = len(orden)

    while True:
        tipo, valor, linea = lector.tomar()
        if valor == '}':
            break
        if tipo == 'dirigida':
            raise UnsupportedFormatError("aristas dirigidas '->' no soportadas", linea)
        if valor == '[':
            raise UnsupportedFormatError("listas de atributos no soportadas", linea)
        if tipo != 'id':
            raise DotParseError(f"se esperaba un id de nodo, encontrado {valor!r}", linea)
        if valor.lower() in ('node', 'edge', 'graph', 'subgraph'):
            raise UnsupportedFormatError(f"sentencia '{valor}' no soportada", linea)

        origen = valor
        siguiente = lector.ver()
        if siguiente is not None and siguiente[0] == 'arista':
            lector.tomar()
            tipo_d, destino, linea_d = lector.tomar()
            if tipo_d != 'id':
                raise DotParseError(f"se esperaba un id tras '--', encontrado {destino!r}", linea_d)
            if origen == destino:
                raise DotParseError(f"auto-lazo {origen} -- {destino}", linea)
            registrar(origen)
            registrar(destino)
            pares.append((origen, destino, linea))
        elif siguiente is not None and siguiente[0] == 'dirigida':
            raise UnsupportedFormatError("aristas dirigidas '->' no soportadas", siguiente[2])
        else:
            registrar(origen)

        siguiente = lector.ver()
        if siguiente is not None:
            if siguiente[0] == 'arista':
                raise DotParseError("cadenas de aristas 'a -- b -- c' no soportadas", siguiente[2])
            if siguiente[1] == '[':
                raise UnsupportedFormatError("listas de atributos no soportadas", siguiente[2])
            if siguiente[1] == ';':
                lector.tomar()

    resto = lector.ver()
    if resto is not None:
        raise DotParseError(f"contenido después de '}}': {resto[1]!r}", resto[2])

    nombres = list(orden)
    enteros = _ids_contiguos(nombres)
    if enteros:
        indice = {nombre: int(nombre) for nombre in nombres}
        etiquetas = None
    else:
        indice = orden
        etiquetas = tuple(nombres)

    aristas = set()
    for origen, destino, linea in pares:
        arista = normalizar_arista(indice[origen], indice[destino])
        if arista in aristas:
            raise DotParseError(f"arista duplicada {origen} -- {destino}", linea)
        aristas.add(arista)

    return Graph(len(nombres), frozenset(aristas), etiquetas)


def _ids_contiguos(nombres: List[str]) -> bool:
    """True si los ids son exactamente los decimales canónicos 0..n-1."""
    if not all(n.isdigit() and (n == '0' or not n.startswith('0')) for n in nombres):
        return False
    return sorted(int(n) for n in nombres) == list(range(len(nombres)))


def export_dot(g: Graph) -> str:
    """
    Escribe el grafo en el subconjunto dot, de forma canónica.

    Ejemplo:
        >>> export_dot(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
        'graph G {\\n0 -- 1;\\n0 -- 2;\\n1 -- 2;\\n}\\n'
    """
    lineas = ['graph G {']
    lineas.extend(f'{u} -- {v};' for u, v in g.sorted_edges())
    lineas.extend(f'{u};' for u in g.isolated_nodes())
    lineas.append('}')
    return '\n'.join(lineas) + '\n'


def leer_dot(ruta: Union[str, Path]) -> Graph:
    """Carga un archivo .dot desde disco."""
    return import_dot(Path(ruta).read_text(encoding='utf-8'))


def guardar_dot(g: Graph, ruta: Union[str, Path]) -> Path:
    ruta = Path(ruta)
    ruta.write_bytes(export_dot(g).encode('utf-8'))
    return ruta
