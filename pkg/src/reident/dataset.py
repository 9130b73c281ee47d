"""Citizen registry records, file ingestion and immutable query indexes.

A :class:`Dataset` stores every field as an integer-coded numpy column over a
shared string table, so a registry of millions of rows fits in a few hundred
megabytes. :class:`CitizenRecord` objects are materialized on demand.
"""

from __future__ import annotations

import logging
import os
import unicodedata
from array import array
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from datetime import date
from enum import Enum

import numpy as np

from . import kernels
from .errors import (
    DuplicateIdError,
    EmptyNameError,
    FieldCountError,
    FutureBirthError,
    InvalidAddressError,
    InvalidDateError,
    InvalidGenderError,
    InvalidIdError,
    RecordError,
    UnderageError,
)

log = logging.getLogger(__name__)

DEFAULT_REFERENCE_DATE = date(2009, 1, 1)
ADULT_AGE = 18
N_FIELDS = 14
HEADER = (
    "# national_id|first|last|mother_first|father_first|gender|birth_city"
    "|birth_day|birth_month|birth_year|reg_city|reg_district|address_door"
    "|street;neighborhood;district;city"
)

_EPOCH_ORDINAL = date(1970, 1, 1).toordinal()
# Turkish casing: dotted i -> İ, dotless ı -> I.
_TR_UPPER = str.maketrans({"i": "İ", "ı": "I"})


class Gender(str, Enum):
    MALE = "M"
    FEMALE = "F"

    @property
    def code(self) -> int:
        return 0 if self is Gender.MALE else 1

    @classmethod
    def from_code(cls, code: int) -> "Gender":
        return cls.MALE if code == 0 else cls.FEMALE


def _fold(raw: str) -> str:
    text = unicodedata.normalize("NFC", raw).translate(_TR_UPPER).upper()
    return unicodedata.normalize("NFC", " ".join(text.split()))


def normalize_name(raw: str) -> str:
    """Uppercase with Turkish i/ı folding and collapsed whitespace.

    >>> normalize_name("  Ayşe  fatma ")
    'AYŞE FATMA'
    """
    out = _fold(raw)
    if not out:
        raise EmptyNameError(f"empty name {raw!r}")
    return out


def normalize_component(raw: str) -> str:
    """Like :func:`normalize_name` but empty values are allowed."""
    return _fold(raw)


# Components kept at each address generalization level, as a slice start
# into (door, street, neighborhood, district, city).
ADDRESS_LEVELS = 5


@dataclass(frozen=True, slots=True)
class Address:
    door_number: str
    street: str
    neighborhood: str
    district: str
    city: str

    def __post_init__(self) -> None:
        parts = self.components()
        if not self.city or not self.district:
            raise InvalidAddressError("city and district must be non-empty", field="address")
        # A finer component may be set only if every coarser one is.
        for finer, coarser in zip(parts, parts[1:]):
            if finer and not coarser:
                raise InvalidAddressError(f"address not prefix-structured: {parts}", field="address")

    def components(self) -> tuple[str, str, str, str, str]:
        return (self.door_number, self.street, self.neighborhood, self.district, self.city)

    def at_level(self, level: int) -> tuple[str, ...]:
        return self.components()[level:]

    def same_as(self, other: "Address", level: int = 0) -> bool:
        return self.at_level(level) == other.at_level(level)


@dataclass(frozen=True, slots=True)
class CitizenRecord:
    national_id: str
    first_name: str
    last_name: str
    mother_first: str
    father_first: str
    gender: Gender
    birth_city: str
    birth_date: date
    registration_city: str
    registration_district: str
    address: Address


def age_of(record: CitizenRecord | date, reference_date: date = DEFAULT_REFERENCE_DATE) -> int:
    """Completed years between the birth date and ``reference_date``."""
    born = record.birth_date if isinstance(record, CitizenRecord) else record
    if born > reference_date:
        raise FutureBirthError(f"birth date {born} after reference date {reference_date}", field="birth_date")
    return reference_date.year - born.year - ((reference_date.month, reference_date.day) < (born.month, born.day))


def _valid_id(text: str) -> bool:
    return len(text) == 11 and text.isascii() and text.isdigit()


def parse_record(line: str, line_no: int | None = None) -> CitizenRecord:
    """Parse and validate one ``|``-delimited registry row."""
    fields = line.rstrip("\r\n").split("|")
    if len(fields) != N_FIELDS:
        raise FieldCountError(f"expected {N_FIELDS} fields, got {len(fields)}", line_no=line_no)
    (nid, first, last, mother, father, gender, bcity,
     day, month, year, rcity, rdistrict, door, rest) = fields

    nid = nid.strip()
    if not _valid_id(nid):
        raise InvalidIdError(f"national_id must be 11 digits, got {nid!r}", line_no=line_no, field="national_id")

    names = {}
    for field, raw in (("first", first), ("last", last), ("mother_first", mother),
                       ("father_first", father), ("birth_city", bcity)):
        try:
            names[field] = normalize_name(raw)
        except EmptyNameError:
            raise EmptyNameError("empty after normalization", line_no=line_no, field=field) from None

    g = gender.strip().upper()
    if g not in ("M", "F"):
        raise InvalidGenderError(f"gender must be M or F, got {gender!r}", line_no=line_no, field="gender")

    try:
        born = date(int(year), int(month), int(day))
    except ValueError:
        raise InvalidDateError(
            f"invalid birth date {day.strip()}.{month.strip()}.{year.strip()}",
            line_no=line_no, field="birth_date",
        ) from None

    parts = rest.split(";")
    if len(parts) != 4:
        raise InvalidAddressError(
            f"address_rest needs 4 ';'-separated parts, got {len(parts)}", line_no=line_no, field="address_rest"
        )
    try:
        address = Address(normalize_component(door), *(normalize_component(p) for p in parts))
    except InvalidAddressError as exc:
        raise exc.at_line(line_no) if line_no is not None else exc

    return CitizenRecord(
        national_id=nid,
        first_name=names["first"],
        last_name=names["last"],
        mother_first=names["mother_first"],
        father_first=names["father_first"],
        gender=Gender(g),
        birth_city=names["birth_city"],
        birth_date=born,
        registration_city=normalize_component(rcity),
        registration_district=normalize_component(rdistrict),
        address=address,
    )


def serialize_record(record: CitizenRecord) -> str:
    """Canonical file line for ``record`` (no trailing newline)."""
    a = record.address
    b = record.birth_date
    text_fields = (
        record.first_name, record.last_name, record.mother_first, record.father_first,
        record.birth_city, record.registration_city, record.registration_district,
        a.door_number, a.street, a.neighborhood, a.district, a.city,
    )
    for value in text_fields:
        if "|" in value or ";" in value or "\n" in value:
            raise ValueError(f"field value {value!r} contains a delimiter")
    return (
        f"{record.national_id}|{record.first_name}|{record.last_name}|{record.mother_first}"
        f"|{record.father_first}|{record.gender.value}|{record.birth_city}"
        f"|{b.day:02d}|{b.month:02d}|{b.year:04d}|{record.registration_city}"
        f"|{record.registration_district}|{a.door_number}"
        f"|{a.street};{a.neighborhood};{a.district};{a.city}"
    )


# -- date helpers -----------------------------------------------------------

def date_to_days(d: date) -> int:
    return d.toordinal() - _EPOCH_ORDINAL


def days_to_date(days: int) -> date:
    return date.fromordinal(int(days) + _EPOCH_ORDINAL)


def split_days(days: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (year, month, day) from days since 1970-01-01."""
    dt = np.asarray(days, dtype=np.int64).astype("datetime64[D]")
    years = dt.astype("datetime64[Y]")
    months = dt.astype("datetime64[M]")
    y = years.astype(np.int64) + 1970
    m = (months - years.astype("datetime64[M]")).astype(np.int64) + 1
    d = (dt - months.astype("datetime64[D]")).astype(np.int64) + 1
    return y, m, d


def ymd_to_days(y: np.ndarray, m: np.ndarray, d: np.ndarray) -> np.ndarray:
    months = (np.asarray(y, np.int64) - 1970) * 12 + (np.asarray(m, np.int64) - 1)
    start = months.astype("datetime64[M]").astype("datetime64[D]").astype(np.int64)
    return start + np.asarray(d, np.int64) - 1


def ages_at(y: np.ndarray, m: np.ndarray, d: np.ndarray, reference_date: date) -> np.ndarray:
    before = (reference_date.month < m) | ((reference_date.month == m) & (reference_date.day < d))
    return reference_date.year - y - before.astype(np.int64)


# -- indexes ----------------------------------------------------------------

def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class PostingIndex:
    """Immutable map from int64 key to the ascending ids holding that key.

    Stored CSR-style: ``ids`` sorted by key (stable, so ids stay ascending
    within a key) and ``offsets`` delimiting each key's run. Dense indexes
    address runs directly by key; sparse ones binary-search a key array.
    """

    __slots__ = ("keys", "offsets", "ids", "dense")

    def __init__(self, keys: np.ndarray | None, offsets: np.ndarray, ids: np.ndarray):
        self.keys = keys
        self.offsets = offsets
        self.ids = ids
        self.dense = keys is None

    @classmethod
    def build(cls, key_of: np.ndarray, dense_size: int | None = None) -> "PostingIndex":
        key_of = np.asarray(key_of, dtype=np.int64)
        ids = np.argsort(key_of, kind="stable").astype(np.int64)
        if dense_size is not None:
            counts = np.bincount(key_of, minlength=dense_size)
            offsets = np.zeros(dense_size + 1, np.int64)
            np.cumsum(counts, out=offsets[1:])
            return cls(None, _readonly(offsets), _readonly(ids))
        sorted_keys = key_of[ids]
        keys, starts = np.unique(sorted_keys, return_index=True)
        offsets = np.append(starts, len(ids)).astype(np.int64)
        return cls(_readonly(keys), _readonly(offsets), _readonly(ids))

    def _slot(self, key: int) -> int:
        if self.dense:
            return key if 0 <= key < len(self.offsets) - 1 else -1
        i = int(np.searchsorted(self.keys, key))
        if i < len(self.keys) and self.keys[i] == key:
            return i
        return -1

    def lookup(self, key: int) -> np.ndarray:
        i = self._slot(key)
        if i < 0:
            return self.ids[:0]
        return self.ids[self.offsets[i]:self.offsets[i + 1]]

    def __len__(self) -> int:
        return len(self.offsets) - 1

    def runs(self) -> Iterator[np.ndarray]:
        for i in range(len(self)):
            yield self.ids[self.offsets[i]:self.offsets[i + 1]]


class PairIndex:
    """Co-resident (male, female) pairs keyed by (male first, female first).

    Within a key, pairs are ordered by the younger partner's age, oldest
    first, so "both partners at least a years old" is a prefix. ``rank``
    packs key and age for that prefix search.
    """

    __slots__ = ("keys", "offsets", "males", "females", "min_age", "male_addr", "rank", "n_strings")

    AGE_SLOTS = 4096

    def __init__(self, males: np.ndarray, females: np.ndarray, first: np.ndarray, n_strings: int,
                 age: np.ndarray, addr: np.ndarray):
        key = first[males].astype(np.int64) * n_strings + first[females]
        min_age = np.minimum(age[males], age[females]).astype(np.int64)
        rank = key * self.AGE_SLOTS + (self.AGE_SLOTS - 1 - np.clip(min_age, 0, self.AGE_SLOTS - 1))
        order = np.argsort(rank, kind="stable")
        self.males = _readonly(males[order])
        self.females = _readonly(females[order])
        self.min_age = _readonly(min_age[order])
        self.male_addr = _readonly(addr[self.males])
        self.rank = _readonly(rank[order])
        keys, starts = np.unique(key[order], return_index=True)
        self.keys = _readonly(keys)
        self.offsets = _readonly(np.append(starts, len(order)).astype(np.int64))
        self.n_strings = n_strings

    def oldest_end(self, keys: np.ndarray, min_age: np.ndarray) -> np.ndarray:
        """End of the prefix of each key's block whose pairs are all >= min_age."""
        floor = self.AGE_SLOTS - 1 - np.clip(min_age, 0, self.AGE_SLOTS - 1)
        return np.searchsorted(self.rank, keys * self.AGE_SLOTS + floor, side="right")

    def lookup(self, male_first: int, female_first: int) -> tuple[np.ndarray, np.ndarray]:
        key = male_first * self.n_strings + female_first
        i = int(np.searchsorted(self.keys, key))
        if i < len(self.keys) and self.keys[i] == key:
            s, e = self.offsets[i], self.offsets[i + 1]
            return self.males[s:e], self.females[s:e]
        return self.males[:0], self.females[:0]

    def __len__(self) -> int:
        return len(self.males)


@dataclass(frozen=True)
class IndexSet:
    by_first_last_gender: PostingIndex
    by_first_gender: PostingIndex
    by_address_l0: PostingIndex
    coresident_pairs: PairIndex


# -- dataset ----------------------------------------------------------------

_CODE_COLUMNS = (
    "first", "last", "mother_first", "father_first", "birth_city",
    "reg_city", "reg_district", "door", "street", "neighborhood", "district", "city",
)
_ADDRESS_COLUMNS = ("door", "street", "neighborhood", "district", "city")


class Dataset(Sequence):
    """Immutable registry of :class:`CitizenRecord` rows in columnar form.

    Record ids are row positions. Columns are read-only numpy arrays; names
    and address parts are codes into :attr:`strings`.
    """

    def __init__(
        self,
        strings: Sequence[str],
        columns: dict[str, np.ndarray],
        reference_date: date = DEFAULT_REFERENCE_DATE,
        rejected: Sequence[RecordError] = (),
    ):
        self.strings: tuple[str, ...] = tuple(strings)
        self._code_of = {s: i for i, s in enumerate(self.strings)}
        self.reference_date = reference_date
        self.rejected: tuple[RecordError, ...] = tuple(rejected)

        n = len(columns["national_id"])
        self.national_id = _readonly(np.asarray(columns["national_id"], dtype=np.int64))
        self.gender = _readonly(np.asarray(columns["gender"], dtype=np.uint8))
        self.birth = _readonly(np.asarray(columns["birth"], dtype=np.int64))
        for name in _CODE_COLUMNS:
            col = np.asarray(columns[name], dtype=np.int32)
            if len(col) != n:
                raise ValueError(f"column {name} has length {len(col)}, expected {n}")
            setattr(self, name, _readonly(col))

        nid_order = np.argsort(self.national_id, kind="stable")
        sorted_nid = self.national_id[nid_order]
        dup = np.flatnonzero(sorted_nid[1:] == sorted_nid[:-1])
        if len(dup):
            raise DuplicateIdError(f"{int(sorted_nid[dup[0]]):011d}")
        self._nid_sorted = _readonly(sorted_nid)
        self._nid_order = _readonly(nid_order)

        y, m, d = split_days(self.birth)
        self.birth_year = _readonly(y.astype(np.int32))
        self.birth_month = _readonly(m.astype(np.int8))
        self.birth_day = _readonly(d.astype(np.int8))
        age = ages_at(y, m, d, reference_date)
        if n and age.min() < 0:
            i = int(np.argmin(age))
            raise FutureBirthError(f"record {self.nid_str(i)} born after {reference_date}", field="birth_date")
        if n and age.min() < ADULT_AGE:
            i = int(np.argmin(age))
            raise UnderageError(f"record {self.nid_str(i)} is under {ADULT_AGE}", field="birth_date")
        self.age = _readonly(age.astype(np.int16))

        self.address_ids = self._address_level_ids()
        self.indexes = self._build_indexes()

    # construction

    @classmethod
    def from_records(
        cls,
        records: Iterable[CitizenRecord],
        reference_date: date = DEFAULT_REFERENCE_DATE,
        rejected: Sequence[RecordError] = (),
    ) -> "Dataset":
        builder = _ColumnBuilder()
        for rec in records:
            builder.add(rec)
        return builder.build(reference_date, rejected)

    def _address_level_ids(self) -> tuple[np.ndarray, ...]:
        """Dense ids of the generalized address tuple at levels 0..4."""
        n_strings = max(len(self.strings), 1)
        ids: list[np.ndarray] = [np.empty(0)] * ADDRESS_LEVELS
        current = np.zeros(len(self), np.int64)
        for level in range(ADDRESS_LEVELS - 1, -1, -1):
            comp = getattr(self, _ADDRESS_COLUMNS[level]).astype(np.int64)
            _, inverse = np.unique(current * n_strings + comp, return_inverse=True)
            current = inverse.reshape(-1).astype(np.int64)
            ids[level] = _readonly(current)
        return tuple(ids)

    def _build_indexes(self) -> IndexSet:
        n_strings = max(len(self.strings), 1)
        first = self.first.astype(np.int64)
        flg = (first * n_strings + self.last) * 2 + self.gender
        fg = first * 2 + self.gender
        addr0 = self.address_ids[0]
        by_addr = PostingIndex.build(addr0, dense_size=int(addr0.max()) + 1 if len(self) else 0)
        males, females = kernels.coresident_pairs(by_addr.ids, by_addr.offsets, self.gender)
        return IndexSet(
            by_first_last_gender=PostingIndex.build(flg),
            by_first_gender=PostingIndex.build(fg, dense_size=2 * n_strings),
            by_address_l0=by_addr,
            coresident_pairs=PairIndex(males, females, self.first, n_strings, self.age, addr0),
        )

    # sequence protocol

    def __len__(self) -> int:
        return len(self.national_id)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self.record(j) for j in range(*i.indices(len(self)))]
        return self.record(i)

    def __iter__(self) -> Iterator[CitizenRecord]:
        for i in range(len(self)):
            yield self.record(i)

    @property
    def records(self) -> "Dataset":
        return self

    # lookups

    def nid_str(self, i: int) -> str:
        return f"{int(self.national_id[i]):011d}"

    def index_of(self, national_id: str) -> int:
        """Record id for ``national_id``; ``KeyError`` when absent."""
        if not _valid_id(national_id):
            raise KeyError(national_id)
        key = int(national_id)
        j = int(np.searchsorted(self._nid_sorted, key))
        if j < len(self._nid_sorted) and self._nid_sorted[j] == key:
            return int(self._nid_order[j])
        raise KeyError(national_id)

    def code(self, text: str) -> int:
        """String-table code of ``text``, or -1 if it never occurs."""
        return self._code_of.get(text, -1)

    def string(self, code: int) -> str:
        return self.strings[code]

    def record(self, i: int) -> CitizenRecord:
        n = len(self)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(i)
        s = self.strings
        return CitizenRecord(
            national_id=self.nid_str(i),
            first_name=s[self.first[i]],
            last_name=s[self.last[i]],
            mother_first=s[self.mother_first[i]],
            father_first=s[self.father_first[i]],
            gender=Gender.from_code(int(self.gender[i])),
            birth_city=s[self.birth_city[i]],
            birth_date=days_to_date(self.birth[i]),
            registration_city=s[self.reg_city[i]],
            registration_district=s[self.reg_district[i]],
            address=Address(*(s[getattr(self, c)[i]] for c in _ADDRESS_COLUMNS)),
        )

    def find(self, first: str, last: str | None = None, gender: Gender | None = None) -> np.ndarray:
        """Ids of records with the given (already normalized) names."""
        fc = self.code(first)
        if fc < 0:
            return np.empty(0, np.int64)
        genders = [gender] if gender is not None else [Gender.MALE, Gender.FEMALE]
        n_strings = max(len(self.strings), 1)
        parts = []
        for g in genders:
            if last is None:
                parts.append(self.indexes.by_first_gender.lookup(fc * 2 + g.code))
            else:
                lc = self.code(last)
                if lc < 0:
                    return np.empty(0, np.int64)
                parts.append(self.indexes.by_first_last_gender.lookup((fc * n_strings + lc) * 2 + g.code))
        return np.sort(np.concatenate(parts)) if len(parts) > 1 else parts[0]

    def residents(self, record_id: int) -> np.ndarray:
        """Ids sharing record ``record_id``'s full (level 0) address, itself included."""
        return self.indexes.by_address_l0.lookup(int(self.address_ids[0][record_id]))

    def address_codes(self, i: int) -> tuple[int, ...]:
        return tuple(int(getattr(self, c)[i]) for c in _ADDRESS_COLUMNS)


class _ColumnBuilder:
    """Accumulates records into compact typed arrays with string interning."""

    def __init__(self):
        self.strings: list[str] = []
        self._codes: dict[str, int] = {}
        self.nid = array("q")
        self.gender = array("B")
        self.birth = array("q")
        self.cols = {name: array("i") for name in _CODE_COLUMNS}

    def _code(self, text: str) -> int:
        c = self._codes.get(text)
        if c is None:
            c = self._codes[text] = len(self.strings)
            self.strings.append(text)
        return c

    def add(self, rec: CitizenRecord) -> None:
        if not _valid_id(rec.national_id):
            raise InvalidIdError(f"national_id must be 11 digits, got {rec.national_id!r}", field="national_id")
        self.nid.append(int(rec.national_id))
        self.gender.append(rec.gender.code)
        self.birth.append(date_to_days(rec.birth_date))
        a = rec.address
        values = (
            rec.first_name, rec.last_name, rec.mother_first, rec.father_first, rec.birth_city,
            rec.registration_city, rec.registration_district,
            a.door_number, a.street, a.neighborhood, a.district, a.city,
        )
        for name, value in zip(_CODE_COLUMNS, values):
            self.cols[name].append(self._code(value))

    def build(self, reference_date: date, rejected: Sequence[RecordError] = ()) -> Dataset:
        columns = {name: np.frombuffer(col, dtype=np.int32) if len(col) else np.empty(0, np.int32)
                   for name, col in self.cols.items()}
        columns["national_id"] = np.frombuffer(self.nid, dtype=np.int64) if len(self.nid) else np.empty(0, np.int64)
        columns["gender"] = np.frombuffer(self.gender, dtype=np.uint8) if len(self.gender) else np.empty(0, np.uint8)
        columns["birth"] = np.frombuffer(self.birth, dtype=np.int64) if len(self.birth) else np.empty(0, np.int64)
        return Dataset(self.strings, columns, reference_date, rejected)


def load_dataset(
    path: str | os.PathLike,
    reference_date: date = DEFAULT_REFERENCE_DATE,
    *,
    strict: bool = False,
) -> Dataset:
    """Read a registry file.

    Malformed rows are collected in ``Dataset.rejected`` and skipped unless
    ``strict`` is set, in which case the first one is raised. Duplicate
    national ids always raise :class:`DuplicateIdError`.
    """
    builder = _ColumnBuilder()
    rejected: list[RecordError] = []
    lines = array("q")
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if line.startswith("#") or not line.strip():
                continue
            try:
                rec = parse_record(line, line_no)
                age = age_of(rec, reference_date)
                if age < ADULT_AGE:
                    raise UnderageError(f"age {age} under {ADULT_AGE}", line_no=line_no, field="birth_date")
            except FutureBirthError as exc:
                err = exc.at_line(line_no)
                if strict:
                    raise err
                rejected.append(err)
                continue
            except RecordError as exc:
                if strict:
                    raise
                rejected.append(exc)
                continue
            builder.add(rec)
            lines.append(line_no)

    nid = np.frombuffer(builder.nid, dtype=np.int64) if len(builder.nid) else np.empty(0, np.int64)
    order = np.argsort(nid, kind="stable")
    dup = np.flatnonzero(nid[order][1:] == nid[order][:-1])
    if len(dup):
        second = int(order[dup[0] + 1])
        raise DuplicateIdError(f"{int(nid[second]):011d}", line_no=int(lines[second]))
    if rejected:
        log.warning("%s: %d malformed rows skipped", path, len(rejected))
    return builder.build(reference_date, rejected)


def iter_lines(dataset: Dataset) -> Iterator[str]:
    """Canonical file lines for every record, in record order."""
    s = dataset.strings
    cols = [getattr(dataset, c).tolist() for c in _CODE_COLUMNS]
    y = dataset.birth_year.tolist()
    m = dataset.birth_month.tolist()
    d = dataset.birth_day.tolist()
    genders = ["F" if g else "M" for g in dataset.gender.tolist()]
    nids = dataset.national_id.tolist()
    (first, last, mother, father, bcity, rcity, rdist, door, street, nb, dist, city) = cols
    for i in range(len(dataset)):
        yield (
            f"{nids[i]:011d}|{s[first[i]]}|{s[last[i]]}|{s[mother[i]]}|{s[father[i]]}|{genders[i]}"
            f"|{s[bcity[i]]}|{d[i]:02d}|{m[i]:02d}|{y[i]:04d}|{s[rcity[i]]}|{s[rdist[i]]}"
            f"|{s[door[i]]}|{s[street[i]]};{s[nb[i]]};{s[dist[i]]};{s[city[i]]}"
        )


def write_dataset(dataset: Dataset, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(HEADER + "\n")
        for line in iter_lines(dataset):
            fh.write(line + "\n")
