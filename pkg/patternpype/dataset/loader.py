"""
Readers for the two on-disk database formats.

- Transactions text + labels text: one transaction per line, items are
  whitespace separated tokens (blank line = empty transaction); the labels
  file holds one ``0``/``1`` token per line aligned by line number.
- Combined CSV: header row ``label,<item>,<item>,...``, then one row per
  transaction with a 0/1 label followed by 0/1 item indicators.

Item names may not contain ";" or unprintable characters.
"""

import csv
from pathlib import Path

import numpy as np

from patternpype.dataset import bitset
from patternpype.dataset.models import PatternSupport, TransactionDatabase
from patternpype.exceptions import DatasetError

LABEL_TOKENS = {"0": 0, "1": 1}
# Item names are joined with ";" inside tab separated reports.
RESERVED_NAME_CHARS = frozenset(";")


def _unfit_item_name(name: str) -> bool:
    return any(ch in RESERVED_NAME_CHARS or not ch.isprintable() for ch in name)


def _read_lines(path: Path) -> list[str]:
    if not path.exists():
        raise DatasetError("file not found", path=path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DatasetError(f"not valid UTF-8 ({e.reason})", path=path) from e
    lines = text.splitlines()
    return lines


def load_database(transactions_path: Path | str, labels_path: Path | str) -> TransactionDatabase:
    """
    Load a transactions file and its aligned labels file.

    Item ids are assigned in order of first appearance; repeated tokens within
    one line are collapsed. Duplicate transactions are kept.

    Raises:
        DatasetError: On a malformed label line, a count mismatch, an empty
            database or single-class labels
    """
    transactions_path = Path(transactions_path)
    labels_path = Path(labels_path)
    transaction_lines = _read_lines(transactions_path)
    label_lines = _read_lines(labels_path)

    # A trailing blank line in the labels file is an editor artefact, not a label.
    while label_lines and not label_lines[-1].strip():
        label_lines.pop()

    labels: list[int] = []
    for number, line in enumerate(label_lines, start=1):
        token = line.strip()
        if token not in LABEL_TOKENS:
            raise DatasetError(
                f"label token {token!r} not in {{0,1}}", path=labels_path, line=number
            )
        labels.append(LABEL_TOKENS[token])

    if not transaction_lines:
        raise DatasetError("empty database", path=transactions_path)
    if len(labels) != len(transaction_lines):
        raise DatasetError(
            f"label/transaction count mismatch: {len(labels)} labels for "
            f"{len(transaction_lines)} transactions",
            path=labels_path,
        )

    ids: dict[str, int] = {}
    rows: list[list[int]] = []
    for number, line in enumerate(transaction_lines, start=1):
        row: list[int] = []
        for token in line.split():
            if _unfit_item_name(token):
                raise DatasetError(
                    f"item token {token!r} is unprintable or contains ';'",
                    path=transactions_path,
                    line=number,
                )
            item = ids.setdefault(token, len(ids))
            row.append(item)
        rows.append(sorted(set(row)))

    return TransactionDatabase.from_transactions(
        rows, labels, item_names=list(ids), num_items=len(ids)
    )


def load_csv_database(path: Path | str) -> TransactionDatabase:
    """
    Load the combined CSV format.

    Raises:
        DatasetError: On a malformed header or row (with its line number),
            non 0/1 cells, an empty database or single-class labels
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError("file not found", path=path)

    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError("empty database", path=path) from None

        names = [name.strip() for name in header[1:]]
        if any(not name for name in names):
            raise DatasetError("empty item name in header", path=path, line=1)
        if len(set(names)) != len(names):
            raise DatasetError("duplicate item name in header", path=path, line=1)
        for name in names:
            if _unfit_item_name(name):
                raise DatasetError(
                    f"item name {name!r} is unprintable or contains ';'",
                    path=path,
                    line=1,
                )

        labels: list[int] = []
        columns: list[list[bool]] = []
        for number, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise DatasetError(
                    f"expected {len(header)} columns, found {len(record)}",
                    path=path,
                    line=number,
                )
            cells = [cell.strip() for cell in record]
            if any(cell not in LABEL_TOKENS for cell in cells):
                raise DatasetError("cells must be 0 or 1", path=path, line=number)
            labels.append(LABEL_TOKENS[cells[0]])
            columns.append([cell == "1" for cell in cells[1:]])

    if not labels:
        raise DatasetError("empty database", path=path)
    if sum(labels) in (0, len(labels)):
        raise DatasetError("single-class labels", path=path)

    n = len(labels)
    matrix = np.array(columns, dtype=bool).reshape(n, len(names)).T
    positive = np.array(labels, dtype=bool)
    return TransactionDatabase(
        num_items=len(names),
        num_transactions=n,
        num_positive=int(positive.sum()),
        item_bitsets=bitset.pack_rows(matrix, n),
        positive_bitset=bitset.pack_rows(positive[None, :], n)[0],
        item_names=tuple(names),
    )


def load(transactions_path: Path | str, labels_path: Path | str | None = None) -> TransactionDatabase:
    """Load either format, choosing by the ``.csv`` extension."""
    transactions_path = Path(transactions_path)
    if transactions_path.suffix.lower() == ".csv":
        if labels_path is not None:
            raise DatasetError(
                "a labels file cannot be combined with the CSV format",
                path=labels_path,
            )
        return load_csv_database(transactions_path)
    if labels_path is None:
        raise DatasetError("a labels file is required", path=transactions_path)
    return load_database(transactions_path, labels_path)


def cover_of(db: TransactionDatabase, itemset: list[int] | tuple[int, ...]) -> bitset.Bitset:
    """Transaction bitset of ``itemset`` (every transaction for the empty set)."""
    for item in itemset:
        if not 0 <= item < db.num_items:
            raise ValueError(f"Item id {item} out of range [0, {db.num_items})")
    if not itemset:
        return db.full_cover
    return np.bitwise_and.reduce(db.item_bitsets[list(itemset)], axis=0)


def support_of(db: TransactionDatabase, itemset: list[int] | tuple[int, ...]) -> PatternSupport:
    """x(I) and n(I) by popcount of the itemset cover."""
    cover = cover_of(db, itemset)
    return PatternSupport(
        total=bitset.popcount(cover),
        positive=bitset.popcount(cover & db.positive_bitset),
    )
