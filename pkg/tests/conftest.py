from __future__ import annotations

import sys
from datetime import date
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reident.dataset import Address, CitizenRecord, Dataset, Gender  # noqa: E402
from reident.synthgen import SynthConfig, generate_population  # noqa: E402

REF = date(2009, 1, 1)


def person(nid: int, first: str, last: str, gender: str, born: int | date, addr: str,
           mother: str = "ANNE", father: str = "BABA", city: str = "ANKARA") -> CitizenRecord:
    """Compact record builder; ``addr`` names a door on a fixed street."""
    birth = born if isinstance(born, date) else date(born, 6, 1)
    return CitizenRecord(
        national_id=f"{nid:011d}",
        first_name=first,
        last_name=last,
        mother_first=mother,
        father_first=father,
        gender=Gender(gender),
        birth_city=city,
        birth_date=birth,
        registration_city=city,
        registration_district="MERKEZ",
        address=Address(addr, "1. SOKAK", "MERKEZ MAHALLESİ", "MERKEZ", city),
    )


def build(records, reference_date: date = REF) -> Dataset:
    return Dataset.from_records(records, reference_date)


@pytest.fixture(scope="session")
def small_population():
    return generate_population(SynthConfig(population_size=2000, seed=42))


@pytest.fixture(scope="session")
def medium_population():
    return generate_population(SynthConfig(population_size=20_000, seed=7))


@pytest.fixture(scope="session")
def ideal_population():
    return generate_population(SynthConfig.preset("ideal", population_size=20_000, seed=3))


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
