"""Quasi-identifier generalization and equivalence-class statistics.

A spec picks which of gender (G), birth date (D), birth city (C) and address
(A) enter the key, and how coarse the date and address are. Records are
grouped by their generalized key in a single hash-aggregation pass.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import date

import numpy as np

from . import kernels
from .dataset import ADDRESS_LEVELS, Address, Dataset
from .errors import DuplicateToken, EmptyInputError, EmptySpecError, LevelOutOfRange, UnknownToken

BIRTH_DATE_LEVELS = 3


@dataclass(frozen=True)
class QuasiIdentifierSpec:
    """Included identifiers and their generalization levels.

    ``birth_date`` and ``address`` hold a level, or ``None`` when excluded.
    Gender and birth city are never generalized, so they are plain flags.
    """

    gender: bool = False
    birth_date: int | None = None
    birth_city: bool = False
    address: int | None = None

    def __post_init__(self) -> None:
        if self.birth_date is not None and not 0 <= self.birth_date < BIRTH_DATE_LEVELS:
            raise LevelOutOfRange(f"birth date level {self.birth_date} not in 0..{BIRTH_DATE_LEVELS - 1}")
        if self.address is not None and not 0 <= self.address < ADDRESS_LEVELS:
            raise LevelOutOfRange(f"address level {self.address} not in 0..{ADDRESS_LEVELS - 1}")

    @property
    def is_empty(self) -> bool:
        return not self.gender and self.birth_date is None and not self.birth_city and self.address is None

    @property
    def label(self) -> str:
        tokens = []
        if self.gender:
            tokens.append("G")
        if self.birth_date is not None:
            tokens.append(f"D{self.birth_date}")
        if self.birth_city:
            tokens.append("C")
        if self.address is not None:
            tokens.append(f"A{self.address}")
        return ",".join(tokens)

    def __str__(self) -> str:
        return self.label


def parse_spec(text: str) -> QuasiIdentifierSpec:
    """Parse compact syntax such as ``"G,D0,C,A0"``; omitted identifiers are excluded."""
    seen: set[str] = set()
    kwargs: dict = {}
    for raw in text.split(","):
        token = raw.strip().upper()
        if not token:
            raise UnknownToken(f"empty token in spec {text!r}")
        kind = token[0]
        if kind in seen:
            raise DuplicateToken(f"identifier {kind} given twice in {text!r}")
        if token == "G":
            kwargs["gender"] = True
        elif token == "C":
            kwargs["birth_city"] = True
        elif kind in "DA" and token[1:].isdigit() and len(token) == 2:
            level = int(token[1:])
            limit = BIRTH_DATE_LEVELS if kind == "D" else ADDRESS_LEVELS
            if level >= limit:
                raise UnknownToken(f"unknown token {token!r}: level out of range")
            kwargs["birth_date" if kind == "D" else "address"] = level
        else:
            raise UnknownToken(f"unknown token {token!r}")
        seen.add(kind)
    return QuasiIdentifierSpec(**kwargs)


# Address sweep with full date, date sweep with full address, then the
# headline specs with and without city of birth.
DEFAULT_SPECS: tuple[QuasiIdentifierSpec, ...] = tuple(parse_spec(s) for s in (
    "G,D0,C,A0",
    "G,D0,A0",
    "G,D0,A1",
    "G,D0,A2",
    "G,D0,A3",
    "G,D0,A4",
    "G,D1,A0",
    "G,D2,A0",
))


def generalize_address(address: Address, level: int) -> tuple[str, ...]:
    if not 0 <= level < ADDRESS_LEVELS:
        raise LevelOutOfRange(f"address level {level} not in 0..{ADDRESS_LEVELS - 1}")
    return address.at_level(level)


def generalize_birth_date(d: date, level: int) -> tuple[int, ...]:
    if not 0 <= level < BIRTH_DATE_LEVELS:
        raise LevelOutOfRange(f"birth date level {level} not in 0..{BIRTH_DATE_LEVELS - 1}")
    return (d.day, d.month, d.year)[level:]


def quasi_key_columns(dataset: Dataset, spec: QuasiIdentifierSpec) -> np.ndarray:
    """(n, k) int64 key matrix in fixed G, D, C, A column order."""
    cols = []
    if spec.gender:
        cols.append(dataset.gender.astype(np.int64))
    if spec.birth_date == 0:
        cols.append(dataset.birth)
    elif spec.birth_date == 1:
        cols.append(dataset.birth_year.astype(np.int64) * 12 + dataset.birth_month)
    elif spec.birth_date == 2:
        cols.append(dataset.birth_year.astype(np.int64))
    if spec.birth_city:
        cols.append(dataset.birth_city.astype(np.int64))
    if spec.address is not None:
        cols.append(dataset.address_ids[spec.address])
    if not cols:
        raise EmptySpecError("spec includes no identifier")
    return np.column_stack(cols) if len(dataset) else np.empty((0, len(cols)), np.int64)


@dataclass(frozen=True)
class UniquenessReport:
    spec: QuasiIdentifierSpec
    class_size_histogram: dict[int, int]
    unique_fraction: float
    population: int

    @property
    def n_classes(self) -> int:
        return sum(self.class_size_histogram.values())

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.label,
            "unique_fraction": self.unique_fraction,
            "population": self.population,
            "class_size_histogram": {str(k): v for k, v in self.class_size_histogram.items()},
        }


def class_labels(dataset: Dataset, spec: QuasiIdentifierSpec) -> tuple[np.ndarray, np.ndarray]:
    """Per-record class id (first-appearance order) and per-class sizes."""
    if spec.is_empty:
        raise EmptySpecError("spec includes no identifier")
    if len(dataset) == 0:
        raise EmptyInputError("dataset is empty")
    return kernels.group_rows(quasi_key_columns(dataset, spec))


def equivalence_classes(dataset: Dataset, spec: QuasiIdentifierSpec) -> UniquenessReport:
    _, sizes = class_labels(dataset, spec)
    hist_sizes, hist_counts = np.unique(sizes, return_counts=True)
    hist = dict(zip(hist_sizes.tolist(), hist_counts.tolist()))
    n = len(dataset)
    return UniquenessReport(spec, hist, hist.get(1, 0) / n, n)


def sweep(dataset: Dataset, specs: Iterable[QuasiIdentifierSpec] = DEFAULT_SPECS) -> list[UniquenessReport]:
    return [equivalence_classes(dataset, s) for s in specs]


def reports_to_csv(reports: Sequence[UniquenessReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["spec", "unique_fraction", "population", "size", "count"])
    for r in reports:
        for size, count in sorted(r.class_size_histogram.items()):
            w.writerow([r.spec.label, repr(r.unique_fraction), r.population, size, count])
    return buf.getvalue()


def reports_to_json(reports: Sequence[UniquenessReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
