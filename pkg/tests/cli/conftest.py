import logging
from pathlib import Path

import pytest

from patternpype.logger import ROOT_LOGGER_NAME


@pytest.fixture(autouse=True)
def restore_logging():
    """``main`` installs its own stderr handler; undo it after every test."""
    yield
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


def write_database(directory: Path, rows: list[str], labels: list[int]) -> tuple[Path, Path]:
    transactions = directory / "transactions.txt"
    labels_file = directory / "labels.txt"
    transactions.write_text("".join(f"{row}\n" for row in rows), encoding="utf-8")
    labels_file.write_text("".join(f"{label}\n" for label in labels), encoding="utf-8")
    return transactions, labels_file


@pytest.fixture
def correlated_files(tmp_path) -> tuple[Path, Path]:
    rows = ["x y", "x", "x", "x", "x", "y", "y", "", "", ""]
    return write_database(tmp_path, rows, [1] * 5 + [0] * 5)


@pytest.fixture
def three_row_files(tmp_path) -> tuple[Path, Path]:
    return write_database(tmp_path, ["a", "b", "a b"], [1, 0, 1])


@pytest.fixture
def sparse_files(tmp_path):
    """One item per row, for databases with exactly ``items`` items."""

    def make(items: int) -> tuple[Path, Path]:
        rows = [f"item{i}" for i in range(items)] * 2
        labels = [i % 2 for i in range(len(rows))]
        return write_database(tmp_path, rows, labels)

    return make
