# config/parametros.py
# Parámetros configurables del simulador

"""
PROPÓSITO:
-----------
Define los valores por defecto de todos los parámetros ajustables: protocolos,
motor (LPs y migración), corpus y trazas. Son los valores que usa la línea de
comandos cuando ni el archivo de configuración, ni el entorno, ni los flags
indican otra cosa.

ESCENARIOS DE REFERENCIA:
-------------------------
Cuatro escenarios de nodos/aristas con corpus de 10 grafos y 1000 pasos:

    escenario   n     e     TTL publicado
    s1          200   400   8
    s2          300   600   8
    s3          400   800   8
    s4          500   1000  9

El TTL publicado no siempre coincide con ⌈ln n / ln(e/n)⌉ (para 300 y 400
nodos la fórmula da 9). `ttl=auto` usa la fórmula; los presets guardan el
valor publicado y `bench --scenarios table1` lo usa tal cual.
"""

# ============================================================================
# 1. PROTOCOLOS DE DISEMINACIÓN
# ============================================================================

PROTOCOLO_DEFAULT = 'fixed'
PROTOCOLOS_DISPONIBLES = ('broadcast', 'fixed', 'adaptive')

PROB = 0.8               # v: probabilidad de reenvío a cada vecino
GEN_PROB = 0.05          # p_gen: probabilidad de generar un mensaje por paso
TTL = 'auto'             # entero o 'auto' (⌈ln n / ln λ⌉ con λ = e/n)

# Adaptive gossip
ALPHA = 0.5              # fracción de la tasa esperada que dispara un estímulo
STIM_PROB = 1.0          # p_stim: probabilidad mientras dura el estímulo
STIM_DURATION = 50       # D: pasos que dura un estímulo
RECV_WINDOW = 50         # W_r: ventana de monitoreo de recepciones


# ============================================================================
# 2. MOTOR Y MIGRACIÓN (GAIA)
# ============================================================================

STEPS = 1000             # pasos de tiempo simulados
LP = 1                   # número de procesos lógicos
GAIA = False             # migración adaptativa de entidades
DELTA = 0.2              # holgura de carga: tope ⌈(1+δ)·n/L⌉
WINDOW = 20              # W: ventana de auditoría de interacciones (pasos)
THETA = 1.5              # θ: umbral de atracción para migrar
K_MIG = 10               # periodo de evaluación de migraciones (pasos)
WORKERS = 1              # hilos que ejecutan los LPs
SEED = 42                # semilla maestra


# ============================================================================
# 3. CORPUS Y TRAZAS
# ============================================================================

CORPUS_SIZE = 10         # grafos por corpus
VERBOSITY = 1            # >= 2 emite también las líneas S (envíos)
TRACE_FORMAT_VERSION = 1

ESCENARIOS_TABLA1 = {
    's1': {'n': 200, 'e': 400, 'ttl': 8},
    's2': {'n': 300, 'e': 600, 'ttl': 8},
    's3': {'n': 400, 'e': 800, 'ttl': 8},
    's4': {'n': 500, 'e': 1000, 'ttl': 9},
}

# Las cinco configuraciones que compara `bench`: (lp, gaia)
CONFIGURACIONES_BENCH = (
    (1, False),
    (2, False),
    (4, False),
    (2, True),
    (4, True),
)

# Ajustes de ejecución (no forman parte de la cabecera de la traza)
REPORTES_DISPONIBLES = ('coverage', 'messages', 'delay', 'speedup', 'integrity')
ESCENARIOS_BENCH = ('table1',)
JOBS = 1                 # grafos o trazas procesados en paralelo
BENCH_GRAPHS = 1         # grafos del corpus que ejecuta `bench`


# ============================================================================
# DICCIONARIO CONSOLIDADO DE PARÁMETROS
# ============================================================================

PARAMETROS = {
    'protocolo': {
        'protocol': PROTOCOLO_DEFAULT,
        'prob': PROB,
        'gen_prob': GEN_PROB,
        'ttl': TTL,
        'alpha': ALPHA,
        'stim_prob': STIM_PROB,
        'stim_duration': STIM_DURATION,
        'recv_window': RECV_WINDOW,
    },
    'motor': {
        'steps': STEPS,
        'lp': LP,
        'gaia': GAIA,
        'delta': DELTA,
        'window': WINDOW,
        'theta': THETA,
        'k_mig': K_MIG,
        'workers': WORKERS,
        'seed': SEED,
    },
    'corpus': {
        'count': CORPUS_SIZE,
        'escenarios': ESCENARIOS_TABLA1,
    },
    'traza': {
        'verbosity': VERBOSITY,
        'format_version': TRACE_FORMAT_VERSION,
    },
}


# ============================================================================
# FUNCIONES DE UTILIDAD
# ============================================================================

def valores_por_defecto():
    """Diccionario plano clave → valor por defecto (capa base del cargador)."""
    planos = {}
    for seccion in ('protocolo', 'motor', 'traza'):
        planos.update(PARAMETROS[seccion])
    planos.pop('format_version')
    return planos


def mostrar_configuracion(valores=None):
    """Imprime la configuración efectiva (o la de por defecto)."""
    valores = valores if valores is not None else valores_por_defecto()
    print("=" * 70)
    print("CONFIGURACIÓN DEL SIMULADOR")
    print("=" * 70)

    print("\n📡 Protocolo:")
    for clave in ('protocol', 'prob', 'gen_prob', 'ttl'):
        print(f"   - {clave}: {valores.get(clave)}")
    if valores.get('protocol') == 'adaptive':
        for clave in ('alpha', 'stim_prob', 'stim_duration', 'recv_window'):
            print(f"   - {clave}: {valores.get(clave)}")

    print("\n⚙️  Motor:")
    for clave in ('steps', 'lp', 'gaia', 'workers', 'seed'):
        print(f"   - {clave}: {valores.get(clave)}")
    if valores.get('gaia'):
        for clave in ('delta', 'window', 'theta', 'k_mig'):
            print(f"   - {clave}: {valores.get(clave)}")
    print("=" * 70)


if __name__ == "__main__":
    mostrar_configuracion()
