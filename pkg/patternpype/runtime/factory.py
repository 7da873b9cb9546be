from patternpype.runtime.configuration import RuntimeConfiguration, TransportKind
from patternpype.runtime.transport.base import Transport


class TransportFactory:
    """Factory for creating transport instances.

    This factory maps each transport kind to the class implementing it. Classes
    are registered once at startup (see ``TransportsInitializer``) and a fresh
    transport is created for every run, configured from the run's
    ``RuntimeConfiguration``.
    """

    _transport_classes: dict[TransportKind, type[Transport]] = {}

    @classmethod
    def register_transport_class(
        cls,
        transport_class: type[Transport],
        kind: TransportKind | None = None,
    ) -> None:
        """Register a transport class, under its own ``kind`` unless one is given."""
        cls._transport_classes[kind or transport_class.kind] = transport_class

    @classmethod
    def get_transport_kinds(cls) -> list[TransportKind]:
        """Get all registered transport kinds."""
        return list(cls._transport_classes.keys())

    @classmethod
    def get_transport_class(cls, kind: TransportKind) -> type[Transport]:
        transport_class = cls._transport_classes.get(kind)
        if transport_class is None:
            raise ValueError(f"Transport class not found for kind {kind}")
        return transport_class

    @classmethod
    def create(cls, configuration: RuntimeConfiguration) -> Transport:
        """Create the transport selected by the configuration.

        Raises:
            ValueError: If no class is registered for the configured kind
        """
        return cls.get_transport_class(configuration.transport)(configuration)

    @classmethod
    def clear(cls) -> None:
        cls._transport_classes.clear()
