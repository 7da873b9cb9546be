"""
Per-worker time breakdown and counters, and their TSV rendering.
"""

from collections.abc import Sequence
from typing import TextIO

from pydantic import BaseModel

from patternpype.dtd.wave import WaveStatistics

METRIC_COLUMNS = (
    "worker",
    "main_s",
    "preprocess_s",
    "probe_s",
    "idle_s",
    "nodes_expanded",
    "steals_attempted",
    "steals_succeeded",
    "messages_sent",
)


class WorkerMetrics(BaseModel):
    """
    Attributes:
        worker_id (int): Worker the numbers belong to
        main_s (float): Seconds spent popping and expanding nodes
        preprocess_s (float): Seconds spent on the initial partition
        probe_s (float): Seconds spent handling messages
        idle_s (float): Remaining lifetime: stealing, waiting, terminating
        nodes_expanded (int): Nodes popped from the stack
        steals_attempted (int): Steal requests sent, random and lifeline
        steals_succeeded (int): Work transfers received
        messages_sent (int): Messages of any kind sent
    """

    worker_id: int
    main_s: float = 0.0
    preprocess_s: float = 0.0
    probe_s: float = 0.0
    idle_s: float = 0.0
    nodes_expanded: int = 0
    steals_attempted: int = 0
    steals_succeeded: int = 0
    messages_sent: int = 0

    @property
    def busy_s(self) -> float:
        return self.main_s + self.preprocess_s + self.probe_s

    def row(self) -> tuple[object, ...]:
        return (
            self.worker_id,
            f"{self.main_s:.6f}",
            f"{self.preprocess_s:.6f}",
            f"{self.probe_s:.6f}",
            f"{self.idle_s:.6f}",
            self.nodes_expanded,
            self.steals_attempted,
            self.steals_succeeded,
            self.messages_sent,
        )


def total_metrics(metrics: Sequence[WorkerMetrics]) -> WorkerMetrics:
    """Column sums, reported under worker id -1."""
    return WorkerMetrics(
        worker_id=-1,
        main_s=sum(m.main_s for m in metrics),
        preprocess_s=sum(m.preprocess_s for m in metrics),
        probe_s=sum(m.probe_s for m in metrics),
        idle_s=sum(m.idle_s for m in metrics),
        nodes_expanded=sum(m.nodes_expanded for m in metrics),
        steals_attempted=sum(m.steals_attempted for m in metrics),
        steals_succeeded=sum(m.steals_succeeded for m in metrics),
        messages_sent=sum(m.messages_sent for m in metrics),
    )


def combine_phases(*phases: Sequence[WorkerMetrics]) -> list[WorkerMetrics]:
    """Per-worker sums over several phases run by the same workers."""
    by_worker: dict[int, list[WorkerMetrics]] = {}
    for metrics in phases:
        for m in metrics:
            by_worker.setdefault(m.worker_id, []).append(m)
    return [
        total_metrics(group).model_copy(update={"worker_id": worker_id})
        for worker_id, group in sorted(by_worker.items())
    ]


def format_metrics_table(
    out: TextIO,
    metrics: Sequence[WorkerMetrics],
    waves: WaveStatistics | None = None,
    metadata: Sequence[tuple[str, object]] = (),
) -> None:
    """Write the per-worker table, a ``total`` row and the wave statistics."""
    for key, value in metadata:
        out.write(f"# {key}\t{value}\n")
    if waves is not None:
        out.write(f"# waves\t{waves.waves_started}\n")
        out.write(f"# wave_retries\t{waves.retries}\n")
        if waves.ticks_to_finish is not None:
            out.write(f"# ticks_to_finish\t{waves.ticks_to_finish}\n")
        if waves.seconds_to_finish is not None:
            out.write(f"# seconds_to_finish\t{waves.seconds_to_finish:.6f}\n")
    out.write("\t".join(METRIC_COLUMNS) + "\n")
    for m in sorted(metrics, key=lambda m: m.worker_id):
        out.write("\t".join(str(c) for c in m.row()) + "\n")
    total = total_metrics(metrics).row()
    out.write("\t".join(("total", *(str(c) for c in total[1:]))) + "\n")
