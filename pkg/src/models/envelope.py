# src/models/envelope.py
# Mensajes entre entidades del motor

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple


class TipoMensaje(IntEnum):
    DATA = 0
    STIMULUS = 1


@dataclass(frozen=True)
class Envelope:
    """
    Mensaje con marca de tiempo entre dos entidades.

    Se entrega siempre en deliver_time = send_time + 1. Para DATA, el par
    (origin, seq) identifica el mensaje en toda la red. Un STIMULUS lleva
    origin = remitente, seq = su contador de control y el origen q para el
    que se pide el refuerzo en stimulus_target_origin.

    send_index distingue envíos idénticos hechos por el mismo remitente en el
    mismo paso.
    """

    kind: TipoMensaje
    origin: int
    seq: int
    sender: int
    dest: int
    send_time: int
    deliver_time: int
    ttl_remaining: int = 0
    hop_count: int = 0
    stimulus_target_origin: Optional[int] = None
    send_index: int = 0

    @property
    def mensaje(self) -> Tuple[int, int]:
        return (self.origin, self.seq)

    def clave_canonica(self) -> Tuple[int, int, int, int, int, int]:
        """Orden de entrega: (origin, seq, sender, dest), luego tipo e índice."""
        return (self.origin, self.seq, self.sender, self.dest, int(self.kind), self.send_index)
