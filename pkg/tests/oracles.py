"""Slow reference implementations used only by the tests.

Each oracle works from plain :class:`CitizenRecord` lists with full scans and
no indexes, so it shares nothing with the code under test beyond the record
type and ``age_of``.
"""

from __future__ import annotations

from collections import Counter
from datetime import date, timedelta

import numpy as np

from reident.dataset import Gender, age_of


def age_by_days(born: date, ref: date) -> int:
    """Completed years by walking the calendar one day at a time."""
    years = 0
    day = born
    while True:
        try:
            anniversary = born.replace(year=born.year + years + 1)
        except ValueError:  # Feb 29 in a common year counts on Mar 1
            anniversary = date(born.year + years + 1, 3, 1)
        while day < anniversary:
            if day == ref:
                return years
            day += timedelta(days=1)
        if day == ref:
            return years + 1
        years += 1


def pairwise_histogram(keys: list[tuple]) -> dict[int, int]:
    """Class-size histogram from an n x n equality matrix."""
    n = len(keys)
    codes = {k: i for i, k in enumerate(dict.fromkeys(keys))}
    arr = np.array([codes[k] for k in keys])
    eq = arr[:, None] == arr[None, :]
    sizes = eq.sum(axis=1)
    hist: Counter = Counter()
    seen = np.zeros(n, bool)
    for i in range(n):
        if not seen[i]:
            seen |= eq[i]
            hist[int(sizes[i])] += 1
    return dict(hist)


def record_key(rec, spec) -> tuple:
    key = []
    if spec.gender:
        key.append(rec.gender.value)
    if spec.birth_date is not None:
        b = rec.birth_date
        key.append((b.day, b.month, b.year)[spec.birth_date:])
    if spec.birth_city:
        key.append(rec.birth_city)
    if spec.address is not None:
        key.append(rec.address.components()[spec.address:])
    return tuple(key)


class LiteralKinship:
    """Direct transcription of the four search procedures over full scans."""

    def __init__(self, records, reference_date: date, H: int, cutoff: int = 100, spouse_window: int = 15):
        self.recs = list(records)
        self.H = H
        self.cutoff = cutoff
        self.spouse_window = spouse_window
        self.age = [age_of(r, reference_date) for r in self.recs]
        self.addr = [r.address.components() for r in self.recs]

    def find(self, gender: Gender, first: str, last: str | None, min_age: int, exclude: int) -> list[int]:
        return [
            i for i, r in enumerate(self.recs)
            if i != exclude and r.gender is gender and r.first_name == first
            and (last is None or r.last_name == last) and self.age[i] >= min_age
        ]

    def marital(self, v: int) -> str:
        rv = self.recs[v]
        others = [i for i in range(len(self.recs)) if i != v and self.addr[i] == self.addr[v]]
        if not others:
            return "single"
        min_age = self.age[v] + self.H
        for i in others:
            r = self.recs[i]
            if r.gender is Gender.MALE and r.first_name == rv.father_first and self.age[i] >= min_age:
                return "single"
            if r.gender is Gender.FEMALE and r.first_name == rv.mother_first and self.age[i] >= min_age:
                return "single"
        for i in others:
            r = self.recs[i]
            if (r.gender is Gender.MALE and r.last_name == rv.last_name
                    and abs(self.age[i] - self.age[v]) <= self.spouse_window):
                return "married"
        return "single"

    def alg2(self, v: int):
        t = self.recs[v]
        min_age = self.age[v] + self.H
        F = self.find(Gender.MALE, t.father_first, t.last_name, min_age, v)
        M = self.find(Gender.FEMALE, t.mother_first, t.last_name, min_age, v)
        f_addrs = {self.addr[f] for f in F}
        R = [m for m in M if self.addr[m] == self.addr[v]]
        if not R:
            R = [m for m in M if self.addr[m] != self.addr[v] and self.addr[m] in f_addrs]
        if R:
            G = self.alg4(R)
            return G, [self.recs[g].last_name for g in G], "alg2_married_parents"
        M = self.find(Gender.FEMALE, t.mother_first, None, min_age, v)
        R = [m for m in M if self.addr[m] != self.addr[v] and self.addr[m] in f_addrs]
        if not R:
            R = [m for m in M if self.addr[m] == self.addr[v]]
        R = sorted(set(R))
        return R, [self.recs[m].last_name for m in R], "alg2_unmarried_or_divorced"

    def alg3(self, v: int):
        t = self.recs[v]
        min_age = self.age[v] + self.H
        F = self.find(Gender.MALE, t.father_first, None, min_age, v)
        M = self.find(Gender.FEMALE, t.mother_first, None, min_age, v)
        R = [m for m in M if self.addr[m] == self.addr[v]]
        if not R:
            F_here = [f for f in F if self.addr[f] == self.addr[v]]
            if F_here:
                homes = {self.addr[f] for f in F_here}
                R = [m for m in M if self.addr[m] in homes]
            else:
                f_addrs = {self.addr[f] for f in F}
                R = [m for m in M if self.addr[m] != self.addr[v] and self.addr[m] in f_addrs]
        if not R:
            return [], [], "alg3"
        G = self.alg4(R)
        return G, [self.recs[g].last_name for g in G], "alg3"

    def alg4(self, R: list[int]) -> list[int]:
        G: set[int] = set()
        for t in R:
            rt = self.recs[t]
            min_age = self.age[t] + self.H
            F = self.find(Gender.MALE, rt.father_first, None, min_age, t)
            M = self.find(Gender.FEMALE, rt.mother_first, None, min_age, t)
            M_here = [m for m in M if self.addr[m] == self.addr[t]]
            F_here = [f for f in F if self.addr[f] == self.addr[t]]
            if M_here:
                homes = {self.addr[m] for m in M_here}
                R_prime = [f for f in F if self.addr[f] in homes]
            elif F_here:
                R_prime = F_here
            else:
                m_addrs = {self.addr[m] for m in M}
                R_prime = [f for f in F if self.addr[f] != self.addr[t] and self.addr[f] in m_addrs]
            G |= set(R_prime)
        return sorted(G)

    def infer(self, v: int) -> tuple[str, str, tuple[int, ...], tuple[str, ...]]:
        if self.recs[v].gender is Gender.FEMALE and self.marital(v) == "married":
            G, names, path = self.alg3(v)
        else:
            G, names, path = self.alg2(v)
        if not G:
            status = "empty_result"
        elif len(G) > self.cutoff:
            status = "oversize_result"
        else:
            status = "success"
        return status, path, tuple(G), tuple(names)


def scan_link(entry, records) -> list[int]:
    """Directory linkage by scanning every record."""
    a = entry.listed_address
    return [
        i for i, r in enumerate(records)
        if r.first_name == entry.first_name and r.last_name == entry.last_name
        and r.address.neighborhood == a.neighborhood and r.address.district == a.district
        and r.address.city == a.city
    ]
