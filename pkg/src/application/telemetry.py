"""OpenTelemetry setup for CLI stage spans."""

import logging

from opentelemetry import trace

__all__ = [
    'initialize_tracing',
    'shutdown_tracing',
    'get_tracer',
]

logger = logging.getLogger(__name__)


def initialize_tracing(service_name: str, endpoint: str) -> None:
    """Export spans over OTLP gRPC to ``endpoint``."""
    from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
    from opentelemetry.sdk.resources import Resource
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import BatchSpanProcessor

    provider = TracerProvider(resource=Resource.create({"service.name": service_name}))
    provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint)))
    trace.set_tracer_provider(provider)
    logger.info("OpenTelemetry tracing initialized with endpoint: %s", endpoint)


def shutdown_tracing() -> None:
    provider = trace.get_tracer_provider()
    if shutdown := getattr(provider, 'shutdown', None):
        shutdown()


def get_tracer(name: str, enabled: bool) -> trace.Tracer:
    return trace.get_tracer(name) if enabled else trace.NoOpTracer()
