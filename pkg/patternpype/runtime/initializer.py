from patternpype.runtime.configuration import TransportKind
from patternpype.runtime.factory import TransportFactory
from patternpype.runtime.transport.base import Transport
from patternpype.runtime.transport.processes import ProcessesTransport
from patternpype.runtime.transport.simulator import SimulatorTransport
from patternpype.runtime.transport.threads import ThreadsTransport


class TransportsInitializer:
    BUILTIN_TRANSPORTS: tuple[type[Transport], ...] = (
        SimulatorTransport,
        ThreadsTransport,
        ProcessesTransport,
    )

    @classmethod
    def register_transport_classes(cls, kinds: list[TransportKind] | None = None) -> None:
        """Register the built-in transports, optionally only some kinds."""
        for transport_class in cls.BUILTIN_TRANSPORTS:
            if kinds is None or transport_class.kind in kinds:
                TransportFactory.register_transport_class(transport_class)

    @classmethod
    def is_configured(cls) -> bool:
        return bool(TransportFactory.get_transport_kinds())

    @classmethod
    def configure(cls, kinds: list[TransportKind] | None = None) -> None:
        cls.register_transport_classes(kinds)
