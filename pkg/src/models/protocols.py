# src/models/protocols.py
# Protocolos de diseminación: broadcast, Fixed Probability y Adaptive Gossip

"""
PROPÓSITO:
-----------
Define lo que hace cada entidad (nodo) en cada paso y al recibir un mensaje.
El motor llama a los manejadores; los protocolos solo tocan el estado de su
propia entidad y se comunican a través de ctx.send().

PROTOCOLOS:
-----------
1. broadcast: reenvía a todos los vecinos salvo al remitente (sin sorteos)
2. fixed:     reenvía a cada vecino con probabilidad v
3. adaptive:  como fixed, pero un nodo que recibe mensajes de un origen q por
              debajo de lo esperado envía un STIMULUS a su proveedor habitual
              de q; el vecino estimulado reenvía los mensajes de q hacia él con
              probabilidad p_stim durante D pasos

REGLAS COMUNES:
---------------
- Un mensaje con ttl_remaining = 0 no se reenvía
- Cada copia reenviada lleva ttl_remaining − 1 y hop_count + 1
- Nunca se reenvía al vecino del que llegó la copia
- Las decisiones de reenvío se sortean en orden ascendente de vecino con
  draw_keyed('fwd', origin, seq, vecino)

CONTEXTO (lo provee el motor):
------------------------------
    ctx.send(remitente, dest, tipo, origin, seq, ttl, hops, objetivo=None)
    ctx.evento(tipo, nodo, origin, seq, hops=None)
"""

from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Set, Tuple, Type

from config.parametros import ALPHA, GEN_PROB, PROB, RECV_WINDOW, STIM_DURATION, STIM_PROB
from src.models.entity_rng import EntityRng
from src.models.envelope import Envelope, TipoMensaje
from src.utils.validators import ConfigurationError, validar_probabilidad, validar_rango


class Mensaje(NamedTuple):
    origin: int
    seq: int
    ttl_remaining: int
    hop_count: int


# ============================================================================
# ESTADO DE LAS ENTIDADES
# ============================================================================

@dataclass
class NodeState:
    """Estado de un nodo; solo lo modifica su propia entidad."""

    node_id: int
    neighbors: Tuple[int, ...]
    gen_prob: float
    rng: EntityRng
    ttl: int
    seen: Set[Tuple[int, int]] = field(default_factory=set)
    next_seq: int = 0
    next_ctrl_seq: int = 0

    def componentes_estado(self) -> Tuple[int, int, int]:
        """(vecinos, mensajes vistos, entradas adaptativas) para el costo de migración."""
        return len(self.neighbors), len(self.seen), 0


@dataclass
class AdaptiveState(NodeState):
    """
    Extensión de Adaptive Gossip.

    recv_window: recepciones DATA por origen en la ventana actual
    provider_counts: por origen, cuántas primeras copias llegaron de cada vecino
    boosted: (origen q, vecino p) → paso de expiración del estímulo
    boost_global_hasta: con preboost_all, todos los pares reforzados hasta ese paso
    """

    recv_window: Counter = field(default_factory=Counter)
    provider_counts: Dict[int, Counter] = field(default_factory=dict)
    boosted: Dict[Tuple[int, int], int] = field(default_factory=dict)
    boost_global_hasta: int = 0
    node_count: int = 0

    def last_provider(self, origen: int) -> Optional[int]:
        conteos = self.provider_counts.get(origen)
        if not conteos:
            return None
        return min(conteos, key=lambda vecino: (-conteos[vecino], vecino))

    def purgar_estimulos(self, t: int) -> None:
        vencidos = [par for par, expira in self.boosted.items() if expira <= t]
        for par in vencidos:
            del self.boosted[par]

    def componentes_estado(self) -> Tuple[int, int, int]:
        adaptativas = len(self.recv_window) + len(self.boosted)
        adaptativas += sum(len(c) for c in self.provider_counts.values())
        return len(self.neighbors), len(self.seen), adaptativas


# ============================================================================
# DIFUSIÓN
# ============================================================================

def _difundir(state: NodeState, msg: Mensaje, arrived_from: Optional[int], ctx, probabilidad) -> int:
    """Reenvía msg a cada vecino ≠ arrived_from según probabilidad(vecino)."""
    if msg.ttl_remaining <= 0:
        return 0
    enviados = 0
    for vecino in state.neighbors:
        if vecino == arrived_from:
            continue
        p = probabilidad(vecino)
        if p <= 0.0:
            continue
        if p < 1.0 and state.rng.draw_keyed('fwd', msg.origin, msg.seq, vecino) >= p:
            continue
        ctx.send(state.node_id, vecino, TipoMensaje.DATA, msg.origin, msg.seq,
                 msg.ttl_remaining - 1, msg.hop_count + 1)
        enviados += 1
    return enviados


def gossip_fixed(state: NodeState, msg: Mensaje, arrived_from: Optional[int], v: float, ctx) -> int:
    """Fixed Probability: cada vecino recibe una copia con probabilidad v."""
    return _difundir(state, msg, arrived_from, ctx, lambda vecino: v)


def probabilidad_efectiva(state: AdaptiveState, origen: int, vecino: int, t: int,
                          v: float, p_stim: float) -> float:
    """p_stim mientras el par (origen → vecino) esté reforzado; si no, v."""
    if t < state.boost_global_hasta:
        return p_stim
    expira = state.boosted.get((origen, vecino))
    if expira is None:
        return v
    if expira > t:
        return p_stim
    del state.boosted[(origen, vecino)]
    return v


def gossip_adaptive(state: AdaptiveState, msg: Mensaje, arrived_from: Optional[int], t: int,
                    v: float, p_stim: float, ctx) -> int:
    return _difundir(
        state, msg, arrived_from, ctx,
        lambda vecino: probabilidad_efectiva(state, msg.origin, vecino, t, v, p_stim),
    )


# ============================================================================
# PROTOCOLOS
# ============================================================================

class Protocol(ABC):
    """Comportamiento de una entidad: generación, recepción y reenvío."""

    nombre = ''

    def __init__(self, prob: float = PROB, gen_prob: float = GEN_PROB):
        self.prob = validar_probabilidad(prob, 'prob')
        self.gen_prob = validar_probabilidad(gen_prob, 'gen_prob')

    def crear_estado(self, node_id: int, neighbors: Tuple[int, ...], rng: EntityRng,
                     ttl: int, node_count: int, steps: int) -> NodeState:
        return NodeState(node_id, tuple(neighbors), self.gen_prob, rng, ttl)

    # --- paso de tiempo ---------------------------------------------------

    def on_timestep(self, state: NodeState, t: int, ctx) -> None:
        self.on_timestep_generate(state, t, ctx)

    def on_timestep_generate(self, state: NodeState, t: int, ctx) -> Optional[Mensaje]:
        """Con probabilidad p_gen crea un mensaje nuevo y lo difunde de inmediato."""
        if state.rng.draw('gen') >= state.gen_prob:
            return None
        seq = state.next_seq
        state.next_seq += 1
        state.seen.add((state.node_id, seq))
        ctx.evento('G', state.node_id, state.node_id, seq)
        msg = Mensaje(state.node_id, seq, state.ttl, 0)
        self.gossip(state, msg, None, t, ctx)
        return msg

    # --- recepción --------------------------------------------------------

    def on_receive(self, state: NodeState, env: Envelope, t: int, ctx) -> None:
        if env.kind == TipoMensaje.DATA:
            self.on_receive_data(state, env, t, ctx)
        else:
            self.on_receive_stimulus(state, env, t, ctx)

    def on_receive_data(self, state: NodeState, env: Envelope, t: int, ctx) -> None:
        clave = env.mensaje
        if clave in state.seen:
            ctx.evento('D', state.node_id, env.origin, env.seq)
            return
        ctx.evento('R', state.node_id, env.origin, env.seq, env.hop_count)
        state.seen.add(clave)
        self.registrar_recepcion(state, env)
        msg = Mensaje(env.origin, env.seq, env.ttl_remaining, env.hop_count)
        self.gossip(state, msg, env.sender, t, ctx)

    def registrar_recepcion(self, state: NodeState, env: Envelope) -> None:
        pass

    def on_receive_stimulus(self, state: NodeState, env: Envelope, t: int, ctx) -> None:
        # los protocolos sin estímulos los ignoran
        pass

    @abstractmethod
    def gossip(self, state: NodeState, msg: Mensaje, arrived_from: Optional[int], t: int, ctx) -> int:
        """Aplica la regla de reenvío; devuelve el número de copias enviadas."""


class Broadcast(Protocol):
    nombre = 'broadcast'

    def gossip(self, state, msg, arrived_from, t, ctx):
        return _difundir(state, msg, arrived_from, ctx, lambda vecino: 1.0)


class FixedProbability(Protocol):
    nombre = 'fixed'

    def gossip(self, state, msg, arrived_from, t, ctx):
        return gossip_fixed(state, msg, arrived_from, self.prob, ctx)


class AdaptiveGossip(Protocol):
    """
    Adaptive Gossip con monitoreo de la tasa de recepción por origen.

    Cada recv_window pasos, un nodo compara cuántos mensajes recibió de cada
    origen q con la tasa esperada p_gen·W_r. Si recibió menos de α·p_gen·W_r,
    envía un STIMULUS(q) al vecino del que suele recibir los mensajes de q
    (o a un vecino al azar si nunca recibió ninguno). El vecino estimulado usa
    p_stim para los mensajes de q dirigidos a él durante D pasos; un estímulo
    repetido renueva la expiración, no la acumula.
    """

    nombre = 'adaptive'

    def __init__(self, prob: float = PROB, gen_prob: float = GEN_PROB, alpha: float = ALPHA,
                 stim_prob: float = STIM_PROB, stim_duration: int = STIM_DURATION,
                 recv_window: int = RECV_WINDOW, preboost_all: bool = False):
        super().__init__(prob, gen_prob)
        self.alpha = validar_rango(alpha, 0.0, None, 'alpha')
        self.stim_prob = validar_probabilidad(stim_prob, 'stim_prob')
        self.stim_duration = validar_rango(stim_duration, 1, None, 'stim_duration')
        self.recv_window = validar_rango(recv_window, 1, None, 'recv_window')
        self.preboost_all = preboost_all

    def crear_estado(self, node_id, neighbors, rng, ttl, node_count, steps) -> AdaptiveState:
        estado = AdaptiveState(node_id, tuple(neighbors), self.gen_prob, rng, ttl, node_count=node_count)
        if self.preboost_all:
            estado.boost_global_hasta = steps + self.stim_duration
        return estado

    def on_timestep(self, state: AdaptiveState, t: int, ctx) -> None:
        state.purgar_estimulos(t)
        self.on_timestep_generate(state, t, ctx)
        if (t + 1) % self.recv_window == 0:
            self.adaptive_monitor(state, t, ctx)

    def registrar_recepcion(self, state: AdaptiveState, env: Envelope) -> None:
        state.recv_window[env.origin] += 1
        state.provider_counts.setdefault(env.origin, Counter())[env.sender] += 1

    def adaptive_monitor(self, state: AdaptiveState, t: int, ctx) -> int:
        """Envía los estímulos del final de ventana; devuelve cuántos envió."""
        umbral = self.alpha * state.gen_prob * self.recv_window
        enviados = 0
        if state.neighbors:
            for origen in range(state.node_count):
                if origen == state.node_id or state.recv_window[origen] >= umbral:
                    continue
                destino = state.last_provider(origen)
                if destino is None:
                    destino = state.rng.choice('stim', state.neighbors)
                seq = state.next_ctrl_seq
                state.next_ctrl_seq += 1
                ctx.send(state.node_id, destino, TipoMensaje.STIMULUS, state.node_id, seq,
                         0, 0, objetivo=origen)
                enviados += 1
        state.recv_window.clear()
        return enviados

    def on_receive_stimulus(self, state: AdaptiveState, env: Envelope, t: int, ctx) -> None:
        state.boosted[(env.stimulus_target_origin, env.sender)] = t + self.stim_duration

    def gossip(self, state, msg, arrived_from, t, ctx):
        return gossip_adaptive(state, msg, arrived_from, t, self.prob, self.stim_prob, ctx)


# ============================================================================
# REGISTRO
# ============================================================================

PROTOCOLOS: Dict[str, Type[Protocol]] = {
    Broadcast.nombre: Broadcast,
    FixedProbability.nombre: FixedProbability,
    AdaptiveGossip.nombre: AdaptiveGossip,
}


def crear_protocolo(config) -> Protocol:
    """
    Instancia el protocolo indicado en la configuración.

    Raises:
        ConfigurationError: id de protocolo desconocido
    """
    clase = PROTOCOLOS.get(config.protocol)
    if clase is None:
        raise ConfigurationError(
            f"protocolo desconocido {config.protocol!r}. Use: {', '.join(PROTOCOLOS)}"
        )
    if clase is AdaptiveGossip:
        return AdaptiveGossip(
            prob=config.prob,
            gen_prob=config.gen_prob,
            alpha=config.alpha,
            stim_prob=config.stim_prob,
            stim_duration=config.stim_duration,
            recv_window=config.recv_window,
            preboost_all=config.preboost_all,
        )
    return clase(prob=config.prob, gen_prob=config.gen_prob)
