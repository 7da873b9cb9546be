from .base import Transport, drive_worker
from .processes import ProcessesTransport
from .simulator import SimulatorTransport
from .threads import ThreadsTransport

__all__ = [
    "Transport",
    "drive_worker",
    "SimulatorTransport",
    "ThreadsTransport",
    "ProcessesTransport",
]
