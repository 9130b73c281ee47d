"""Phone-book model and linkage of listings back to registry records.

A listing carries a name, a landline number and an address generalized to
(neighborhood, district, city). The query interface mimics a white-pages
web form: search by last name within an area code, optionally narrowed by
first name, 20 results per page.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .dataset import Address, Dataset, normalize_component, normalize_name
from .errors import EmptyInputError, RecordError, UnknownAreaCode

PAGE_SIZE = 20
AREA_CODE_BASE = 200
DIRECTORY_HEADER = "# entry_id|last|first|phone|neighborhood|district|city"


def area_codes_for(cities: Iterable[str]) -> dict[str, str]:
    """Three-digit area code per city, assigned by sorted city name."""
    return {city: str(AREA_CODE_BASE + k) for k, city in enumerate(sorted(set(cities)))}


@dataclass(frozen=True, slots=True)
class DirectoryEntry:
    entry_id: int
    last_name: str
    first_name: str
    phone_number: str
    listed_address: Address

    @property
    def area_code(self) -> str:
        return self.phone_number[:3]


@dataclass
class QueryLog:
    """Cost counters for directory queries; one page is one form submission."""

    queries: int = 0
    pages: int = 0


class Directory:
    """Immutable list of listings with a (area code, last name) index."""

    def __init__(self, entries: Iterable[DirectoryEntry]):
        self.entries: tuple[DirectoryEntry, ...] = tuple(sorted(entries, key=lambda e: e.entry_id))
        phones = Counter(e.phone_number for e in self.entries)
        dup = [p for p, c in phones.items() if c > 1]
        if dup:
            raise ValueError(f"phone number {dup[0]} listed twice")
        ids = Counter(e.entry_id for e in self.entries)
        dup = [i for i, c in ids.items() if c > 1]
        if dup:
            raise ValueError(f"entry id {dup[0]} listed twice")
        self._by_area_last: dict[tuple[str, str], list[DirectoryEntry]] = {}
        for e in self.entries:
            self._by_area_last.setdefault((e.area_code, e.last_name), []).append(e)
        self.area_codes = frozenset(e.area_code for e in self.entries)
        self._by_id = {e.entry_id: e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, entry_id: int) -> DirectoryEntry:
        return self._by_id[entry_id]

    def matching(self, last_name: str, area_code: str, first_name: str | None = None) -> list[DirectoryEntry]:
        if area_code not in self.area_codes:
            raise UnknownAreaCode(area_code)
        hits = self._by_area_last.get((area_code, last_name), [])
        if first_name is not None:
            hits = [e for e in hits if e.first_name == first_name]
        return hits


def query_directory(
    directory: Directory,
    last_name: str,
    area_code: str,
    first_name: str | None = None,
    page: int = 0,
    log: QueryLog | None = None,
) -> list[DirectoryEntry]:
    """One page of listings matching ``last_name`` in ``area_code``, by entry id."""
    if page < 0:
        raise ValueError("page must be >= 0")
    last = normalize_name(last_name)
    first = normalize_name(first_name) if first_name is not None else None
    hits = directory.matching(last, area_code, first)
    if log is not None:
        log.pages += 1
        if page == 0:
            log.queries += 1
    return hits[page * PAGE_SIZE:(page + 1) * PAGE_SIZE]


def retrieve(directory: Directory, entry: DirectoryEntry, log: QueryLog | None = None) -> DirectoryEntry:
    """Fetch ``entry`` the way an attacker would: page through its name query."""
    page = 0
    while True:
        rows = query_directory(directory, entry.last_name, entry.area_code, entry.first_name, page, log)
        if entry in rows:
            return entry
        if len(rows) < PAGE_SIZE:
            raise KeyError(entry.entry_id)
        page += 1


# -- file I/O -----------------------------------------------------------------

def parse_entry(line: str, line_no: int | None = None) -> DirectoryEntry:
    parts = line.rstrip("\r\n").split("|")
    if len(parts) != 7:
        raise RecordError(f"expected 7 fields, got {len(parts)}", line_no=line_no)
    entry_id, last, first, phone, nb, district, city = parts
    try:
        eid = int(entry_id)
    except ValueError:
        raise RecordError(f"bad entry id {entry_id!r}", line_no=line_no, field="entry_id") from None
    if not (phone.isascii() and phone.isdigit() and len(phone) >= 4):
        raise RecordError(f"bad phone number {phone!r}", line_no=line_no, field="phone")
    address = Address("", "", normalize_component(nb), normalize_component(district), normalize_component(city))
    return DirectoryEntry(eid, normalize_name(last), normalize_name(first), phone, address)


def load_directory(path: str | os.PathLike) -> Directory:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if line.startswith("#") or not line.strip():
                continue
            entries.append(parse_entry(line, line_no))
    return Directory(entries)


def write_directory(directory: Directory, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(DIRECTORY_HEADER + "\n")
        for e in directory:
            a = e.listed_address
            fh.write(f"{e.entry_id}|{e.last_name}|{e.first_name}|{e.phone_number}"
                     f"|{a.neighborhood}|{a.district}|{a.city}\n")


# -- linkage ----------------------------------------------------------------

def link_entry(entry: DirectoryEntry, dataset: Dataset) -> np.ndarray:
    """Record ids matching the listing's name and level-2 address, ascending."""
    a = entry.listed_address
    codes = [dataset.code(x) for x in (a.neighborhood, a.district, a.city)]
    if min(codes) < 0:
        return np.empty(0, np.int64)
    ids = dataset.find(entry.first_name, entry.last_name)
    if len(ids) == 0:
        return ids
    keep = ((dataset.neighborhood[ids] == codes[0])
            & (dataset.district[ids] == codes[1])
            & (dataset.city[ids] == codes[2]))
    return ids[keep]


@dataclass
class LinkageReport:
    queried: int
    found: int
    anonymity_histogram: dict[int, int]
    unique_fraction: float
    le2_fraction: float
    le3_fraction: float
    pages_fetched: int = 0
    anonymity_sets: dict[int, list[int]] = field(default_factory=dict, repr=False)

    @property
    def found_zero(self) -> bool:
        return self.found == 0

    def to_dict(self) -> dict:
        return {
            "queried": self.queried,
            "found": self.found,
            "found_zero": self.found_zero,
            "unique_fraction": self.unique_fraction,
            "le2_fraction": self.le2_fraction,
            "le3_fraction": self.le3_fraction,
            "pages_fetched": self.pages_fetched,
            "anonymity_histogram": {str(k): v for k, v in sorted(self.anonymity_histogram.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value"])
        for key, value in self.to_dict().items():
            if key != "anonymity_histogram":
                w.writerow([key, value])
        for size, count in sorted(self.anonymity_histogram.items()):
            w.writerow([f"size_{size}", count])
        return buf.getvalue()


def linkage_stats(entries: Sequence[DirectoryEntry], dataset: Dataset, pages_fetched: int = 0) -> LinkageReport:
    """Link every entry; fractions are over entries that were found."""
    if len(entries) == 0:
        raise EmptyInputError("no directory entries to link")
    sets = {e.entry_id: link_entry(e, dataset).tolist() for e in entries}
    sizes = [len(s) for s in sets.values() if s]
    found = len(sizes)
    hist = dict(sorted(Counter(sizes).items()))

    def frac(limit: int) -> float:
        return sum(1 for s in sizes if s <= limit) / found if found else 0.0

    return LinkageReport(
        queried=len(entries), found=found, anonymity_histogram=hist,
        unique_fraction=frac(1), le2_fraction=frac(2), le3_fraction=frac(3),
        pages_fetched=pages_fetched, anonymity_sets=sets,
    )


def sample_entries(directory: Directory, n: int, seed: int, log: QueryLog | None = None) -> list[DirectoryEntry]:
    """Retrieve ``n`` random listings through the query interface."""
    if n > len(directory):
        raise ValueError(f"sample of {n} exceeds directory size {len(directory)}")
    rng = np.random.default_rng(np.random.SeedSequence([seed % 2**64, 3]))
    picks = np.sort(rng.choice(len(directory), size=n, replace=False))
    return [retrieve(directory, directory.entries[i], log) for i in picks.tolist()]
