"""Mother's-maiden-name inference from a registry alone.

For a victim we look for the mother among women carrying the victim's
``mother_first`` and the father among men carrying ``father_first``, then
repeat one generation up to find the mother's father, whose last name is the
maiden name. Matching is on exact names, an age gap of at least ``H`` years
and shared full addresses. The answer is an anonymity set ``G`` of candidate
records; searches that return nothing or more than ``cutoff`` candidates are
unsuccessful.

Every step takes the first matching branch even when that branch yields
nothing: a later branch never runs because an earlier one came up empty.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from multiprocessing import get_context

import numpy as np

from .dataset import CitizenRecord, Dataset, Gender
from .errors import ConfigError, EmptyInputError, NotFemaleError, SampleTooLarge, VictimNotFound
from .synthgen import GroundTruth, MaritalStatus

MALE, FEMALE = 0, 1
DEFAULT_H_VALUES = (15, 25, 35)
AGE_BANDS: tuple[tuple[int, int | None], ...] = ((18, 30), (31, 45), (46, 60), (61, None))
SIZE_BUCKETS: tuple[tuple[int, int], ...] = ((1, 1), (2, 5), (6, 10), (11, 50), (51, 100))


class Status(str, Enum):
    SUCCESS = "success"
    EMPTY_RESULT = "empty_result"
    OVERSIZE_RESULT = "oversize_result"


class Path(str, Enum):
    ALG2_MARRIED_PARENTS = "alg2_married_parents"
    ALG2_UNMARRIED_OR_DIVORCED = "alg2_unmarried_or_divorced"
    ALG3 = "alg3"


@dataclass(frozen=True)
class InferenceConfig:
    H: int = 15
    anonymity_cutoff: int = 100
    # Husband detection: same last name, age within this many years.
    spouse_age_window: int = 15
    reference_date: date | None = None

    def __post_init__(self) -> None:
        if self.H < 0:
            raise ConfigError("H must be >= 0")
        if self.anonymity_cutoff < 1:
            raise ConfigError("anonymity_cutoff must be >= 1")
        if self.spouse_age_window < 0:
            raise ConfigError("spouse_age_window must be >= 0")


def classify_status(size: int, cutoff: int) -> Status:
    if size == 0:
        return Status.EMPTY_RESULT
    if size > cutoff:
        return Status.OVERSIZE_RESULT
    return Status.SUCCESS


@dataclass(frozen=True)
class SearchState:
    """Snapshot of one search step, kept only when tracing is requested."""

    step: str
    t: int
    F: tuple[int, ...] = ()
    M: tuple[int, ...] = ()
    R: tuple[int, ...] = ()
    R_prime: tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class MaidenNameResult:
    """Anonymity set ``G`` for one victim.

    Candidates are kept as ascending record ids with string-table codes of
    their maiden names; tuples of names are built only on demand because
    oversize sets can hold hundreds of thousands of entries.
    """

    victim_id: str
    record_id: int
    status: Status
    ids: np.ndarray
    name_codes: np.ndarray
    path: Path
    marital_status_used: MaritalStatus | None
    strings: tuple[str, ...] = field(default=(), repr=False)
    trace: tuple[SearchState, ...] = field(default=(), repr=False)

    @property
    def candidate_ids(self) -> tuple[int, ...]:
        return tuple(self.ids.tolist())

    @property
    def maiden_names(self) -> tuple[str, ...]:
        s = self.strings
        return tuple(s[c] for c in self.name_codes.tolist())

    @property
    def candidates(self) -> list[tuple[int, str]]:
        return list(zip(self.candidate_ids, self.maiden_names))

    @property
    def size(self) -> int:
        return len(self.ids)

    @property
    def distinct_names(self) -> int:
        return len(np.unique(self.name_codes))

    def has_name(self, name: str) -> bool:
        return name in set(self.maiden_names)

    def key(self) -> tuple:
        """Comparable summary: status, path, candidate ids and names."""
        return (self.status.value, self.path.value, self.candidate_ids, self.maiden_names)

    def to_dict(self, dataset: Dataset | None = None) -> dict:
        def ident(i: int):
            return dataset.nid_str(i) if dataset is not None else i

        return {
            "victim_id": self.victim_id,
            "status": self.status.value,
            "path": self.path.value,
            "marital_status": self.marital_status_used.value if self.marital_status_used else None,
            "size": self.size,
            "distinct_names": self.distinct_names,
            "candidates": [{"id": ident(i), "maiden_name": n} for i, n in self.candidates],
        }


# -- search primitives ------------------------------------------------------

class _Search:
    """Shared column views for one (dataset, config) pair."""

    def __init__(self, dataset: Dataset, config: InferenceConfig, trace: bool = False):
        self.ds = dataset
        self.cfg = config
        self.first = dataset.first
        self.last = dataset.last
        self.gender = dataset.gender
        self.age = dataset.age
        self.age64 = dataset.age.astype(np.int64)
        self.addr = dataset.address_ids[0]
        self.pairs = dataset.indexes.coresident_pairs
        self.trace: list[SearchState] | None = [] if trace else None

    def note(self, step: str, t: int, **sets) -> None:
        if self.trace is not None:
            self.trace.append(SearchState(step, t, **{k: tuple(np.asarray(v).tolist()) for k, v in sets.items()}))

    def residents(self, t: int) -> np.ndarray:
        return self.ds.residents(t)

    def local(self, t: int, gender: int, first: int, min_age: int, last: int | None = None) -> np.ndarray:
        """Members of t's household with the given sex and first name, old enough, t excluded."""
        res = self.residents(t)
        keep = (self.gender[res] == gender) & (self.first[res] == first) & (self.age[res] >= min_age) & (res != t)
        if last is not None:
            keep &= self.last[res] == last
        return res[keep]

    def couples_elsewhere(self, t: int, father_first: int, mother_first: int, min_age: int,
                          male_last: int | None = None, female_last: int | None = None,
                          away: str = "female") -> tuple[np.ndarray, np.ndarray]:
        """Co-resident (father, mother) candidate pairs living away from t."""
        males, females = self.pairs.lookup(father_first, mother_first)
        if len(males) == 0:
            return males, females
        age = self.age
        keep = (age[males] >= min_age) & (age[females] >= min_age) & (males != t) & (females != t)
        if male_last is not None:
            keep &= self.last[males] == male_last
        if female_last is not None:
            keep &= self.last[females] == female_last
        side = females if away == "female" else males
        keep &= self.addr[side] != self.addr[t]
        return males[keep], females[keep]

    # algorithms

    def marital_status(self, v: int) -> MaritalStatus:
        if self.gender[v] != FEMALE:
            raise NotFemaleError(f"record {self.ds.nid_str(v)} is not female")
        res = self.residents(v)
        others = res[res != v]
        if len(others) == 0:
            return MaritalStatus.SINGLE
        min_age = int(self.age[v]) + self.cfg.H
        g, f, a = self.gender[others], self.first[others], self.age[others]
        father = (g == MALE) & (f == self.ds.father_first[v]) & (a >= min_age)
        mother = (g == FEMALE) & (f == self.ds.mother_first[v]) & (a >= min_age)
        if father.any() or mother.any():
            return MaritalStatus.SINGLE
        gap = np.abs(a.astype(np.int64) - int(self.age[v]))
        husband = (g == MALE) & (self.last[others] == self.last[v]) & (gap <= self.cfg.spouse_age_window)
        return MaritalStatus.MARRIED if husband.any() else MaritalStatus.SINGLE

    def alg2(self, v: int) -> tuple[np.ndarray, np.ndarray, Path]:
        ds = self.ds
        last, ff, mf = int(self.last[v]), int(ds.father_first[v]), int(ds.mother_first[v])
        min_age = int(self.age[v]) + self.cfg.H

        # Parents married: both carry the victim's last name.
        R = self.local(v, FEMALE, mf, min_age, last)
        if len(R):
            self.note("alg2.11", v, R=R)
        else:
            _, mothers = self.couples_elsewhere(v, ff, mf, min_age, male_last=last, female_last=last)
            R = np.unique(mothers)
            self.note("alg2.12", v, R=R)
        if len(R):
            ids, names = self.alg4(R)
            return ids, names, Path.ALG2_MARRIED_PARENTS

        # Parents divorced or unmarried: the mother may carry any last name.
        _, mothers = self.couples_elsewhere(v, ff, mf, min_age, male_last=last)
        R = np.unique(mothers)
        if len(R):
            self.note("alg2.18", v, R=R)
        else:
            R = self.local(v, FEMALE, mf, min_age)
            self.note("alg2.19", v, R=R)
        return R, self.last[R], Path.ALG2_UNMARRIED_OR_DIVORCED

    def alg3(self, v: int) -> tuple[np.ndarray, np.ndarray, Path]:
        ds = self.ds
        ff, mf = int(ds.father_first[v]), int(ds.mother_first[v])
        min_age = int(self.age[v]) + self.cfg.H

        R = self.local(v, FEMALE, mf, min_age)
        if len(R):
            self.note("alg3.10", v, R=R)
        else:
            fathers_here = self.local(v, MALE, ff, min_age)
            if len(fathers_here):
                # Mothers sharing an address with those fathers. They would
                # live with the victim too, so this branch finds nobody.
                homes = np.unique(self.addr[fathers_here])
                mothers = self.local(v, FEMALE, mf, min_age)
                R = mothers[np.isin(self.addr[mothers], homes)]
                self.note("alg3.11", v, F=fathers_here, R=R)
            else:
                _, mothers = self.couples_elsewhere(v, ff, mf, min_age)
                R = np.unique(mothers)
                self.note("alg3.12", v, R=R)
        if len(R) == 0:
            return R, self.last[R], Path.ALG3
        ids, names = self.alg4(R)
        return ids, names, Path.ALG3

    def alg4(self, R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Union over candidate mothers t of their candidate fathers.

        Vectorized over R, which can hold hundreds of thousands of women for
        common names. Per t: if a candidate mother or father lives with t,
        the answer is the candidate fathers living with t (a father "paired"
        with a mother at t's address lives there too); otherwise it is every
        candidate father living away from t with a candidate mother.
        """
        R = np.unique(np.asarray(R, np.int64))
        if len(R) == 0:
            raise EmptyInputError("no candidate mothers")
        ds, H = self.ds, self.cfg.H
        age = self.age64
        ff = ds.father_first[R].astype(np.int64)
        mf = ds.mother_first[R].astype(np.int64)
        min_age = age[R] + H

        # Every (t, household member) pair.
        index = ds.indexes.by_address_l0
        home = self.addr[R]
        start = index.offsets[home]
        size = index.offsets[home + 1] - start
        owner = np.repeat(np.arange(len(R)), size)
        pos = np.arange(int(size.sum())) - np.repeat(np.cumsum(size) - size, size) + np.repeat(start, size)
        member = index.ids[pos]
        old_enough = (age[member] >= min_age[owner]) & (member != R[owner])
        is_f = old_enough & (self.gender[member] == MALE) & (self.first[member] == ff[owner])
        is_m = old_enough & (self.gender[member] == FEMALE) & (self.first[member] == mf[owner])
        has_local = np.bincount(owner[is_f | is_m], minlength=len(R)) > 0
        found = [member[is_f]]

        away = ~has_local
        if away.any():
            found.append(self._fathers_elsewhere(R[away], ff[away], mf[away], age))

        if self.trace is not None:
            has_m = np.bincount(owner[is_m], minlength=len(R)) > 0
            for k, t in enumerate(R.tolist()):
                step = "alg4.11" if has_m[k] else ("alg4.12" if has_local[k] else "alg4.13")
                self.note(step, t)
        G = np.unique(np.concatenate(found))
        return G, self.last[G]

    def _fathers_elsewhere(self, T: np.ndarray, ff: np.ndarray, mf: np.ndarray, age: np.ndarray) -> np.ndarray:
        """Fathers of co-resident candidate couples away from some t in T.

        A couple (m, f) found under t's parent names counts for t when both
        are at least H years older than t and m lives elsewhere. Grouped by
        parent-name pair, that holds for some t iff the youngest t qualifies,
        or the youngest t living at a different address than the youngest
        does.
        """
        pairs = self.pairs
        key = ff * pairs.n_strings + mf
        order = np.lexsort((age[T], key))
        T, key = T[order], key[order]
        t_age = age[T]
        t_addr = self.addr[T]
        group_start = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
        group_of = np.cumsum(np.r_[False, key[1:] != key[:-1]])
        gkey = key[group_start]
        youngest_age = t_age[group_start]
        youngest_addr = t_addr[group_start]
        # Youngest t whose address differs from the youngest's; rows are
        # age-sorted within a group, so it is the group's first such row.
        other = np.flatnonzero(t_addr != youngest_addr[group_of])
        second_age = np.full(len(gkey), np.iinfo(np.int64).max)
        groups_with_other, first_other = np.unique(group_of[other], return_index=True)
        second_age[groups_with_other] = t_age[other[first_other]]

        slot = np.searchsorted(pairs.keys, gkey)
        slot = np.minimum(slot, len(pairs.keys) - 1) if len(pairs.keys) else slot
        hit = (pairs.keys[slot] == gkey) if len(pairs.keys) else np.zeros(len(gkey), bool)
        g = np.flatnonzero(hit)
        if len(g) == 0:
            return np.empty(0, np.int64)
        # Only couples at least H older than the youngest t can count.
        lo = pairs.offsets[slot[g]]
        hi = np.maximum(pairs.oldest_end(gkey[g], youngest_age[g] + self.cfg.H), lo)
        n = hi - lo
        pos = np.arange(int(n.sum())) - np.repeat(np.cumsum(n) - n, n) + np.repeat(lo, n)
        pg = np.repeat(g, n)
        limit = pairs.min_age[pos] - self.cfg.H
        ok = (youngest_addr[pg] != pairs.male_addr[pos]) | (second_age[pg] <= limit)
        return pairs.males[pos[ok]]

    def result(self, v: int, ids: np.ndarray, names: np.ndarray, path: Path,
               marital: MaritalStatus | None) -> MaidenNameResult:
        ids = np.asarray(ids, np.int64)
        return MaidenNameResult(
            victim_id=self.ds.nid_str(v),
            record_id=v,
            status=classify_status(len(ids), self.cfg.anonymity_cutoff),
            ids=ids,
            name_codes=np.asarray(names, np.int32),
            path=path,
            marital_status_used=marital,
            strings=self.ds.strings,
            trace=tuple(self.trace) if self.trace is not None else (),
        )

    def infer(self, v: int) -> MaidenNameResult:
        if self.trace is not None:
            self.trace.clear()
        marital = None
        if self.gender[v] == FEMALE:
            marital = self.marital_status(v)
        if marital is MaritalStatus.MARRIED:
            ids, names, path = self.alg3(v)
        else:
            ids, names, path = self.alg2(v)
        return self.result(v, ids, names, path, marital)


def resolve_victim(victim, dataset: Dataset) -> int:
    """Record id for a record id, national id string or :class:`CitizenRecord`."""
    if isinstance(victim, CitizenRecord):
        victim = victim.national_id
    if isinstance(victim, str):
        try:
            return dataset.index_of(victim)
        except KeyError:
            raise VictimNotFound(f"national id {victim!r} not in dataset") from None
    if isinstance(victim, (int, np.integer)) and 0 <= int(victim) < len(dataset):
        return int(victim)
    raise VictimNotFound(f"record {victim!r} not in dataset")


def _check_config(dataset: Dataset, config: InferenceConfig | None) -> InferenceConfig:
    config = config or InferenceConfig()
    if config.reference_date is not None and config.reference_date != dataset.reference_date:
        raise ConfigError(
            f"config reference date {config.reference_date} differs from dataset's {dataset.reference_date}"
        )
    return config


def infer_marital_status(victim, dataset: Dataset, config: InferenceConfig | None = None) -> MaritalStatus:
    config = _check_config(dataset, config)
    return _Search(dataset, config).marital_status(resolve_victim(victim, dataset))


def infer_maiden_name(victim, dataset: Dataset, config: InferenceConfig | None = None, *,
                      trace: bool = False) -> MaidenNameResult:
    config = _check_config(dataset, config)
    return _Search(dataset, config, trace).infer(resolve_victim(victim, dataset))


def _forced(search: _Search, v: int, run, marital) -> MaidenNameResult:
    ids, names, path = run(v)
    return search.result(v, ids, names, path, marital)


def alg2_male_or_single(victim, dataset: Dataset, config: InferenceConfig | None = None) -> MaidenNameResult:
    """Run the male / single-female search directly, skipping dispatch."""
    config = _check_config(dataset, config)
    search = _Search(dataset, config)
    v = resolve_victim(victim, dataset)
    marital = MaritalStatus.SINGLE if dataset.gender[v] == FEMALE else None
    return _forced(search, v, search.alg2, marital)


def alg3_married_female(victim, dataset: Dataset, config: InferenceConfig | None = None) -> MaidenNameResult:
    """Run the married-female search directly, skipping dispatch."""
    config = _check_config(dataset, config)
    search = _Search(dataset, config)
    v = resolve_victim(victim, dataset)
    if dataset.gender[v] != FEMALE:
        raise NotFemaleError(f"record {dataset.nid_str(v)} is not female")
    return _forced(search, v, search.alg3, MaritalStatus.MARRIED)


def alg4_mothers_father(R: Sequence[int], dataset: Dataset,
                        config: InferenceConfig | None = None) -> tuple[np.ndarray, tuple[str, ...]]:
    """Candidate maternal grandfathers for candidate mothers ``R``, with their last names."""
    config = _check_config(dataset, config)
    ids, names = _Search(dataset, config).alg4(np.asarray(R, np.int64))
    return ids, tuple(dataset.strings[c] for c in names.tolist())


# -- cohort evaluation --------------------------------------------------------

def band_label(band: tuple[int, int | None]) -> str:
    lo, hi = band
    return f"{lo}-{hi}" if hi is not None else f"{lo}+"


def age_band_of(age: np.ndarray) -> np.ndarray:
    out = np.full(len(age), -1, np.int64)
    for k, (lo, hi) in enumerate(AGE_BANDS):
        out[(age >= lo) & ((age <= hi) if hi is not None else True)] = k
    return out


def stratified_sample(dataset: Dataset, sample_size: int, seed: int) -> np.ndarray:
    """Equal quotas over gender x age band, without replacement.

    Strata too small for their quota contribute everything they have and the
    shortfall is spread over the others. Returned ids are sorted.
    """
    n = len(dataset)
    if sample_size > n:
        raise SampleTooLarge(f"sample of {sample_size} exceeds population {n}")
    if sample_size < 0:
        raise ValueError("sample_size must be >= 0")
    rng = np.random.default_rng(np.random.SeedSequence([seed % 2**64, 4]))
    stratum = dataset.gender.astype(np.int64) * len(AGE_BANDS) + age_band_of(dataset.age)
    members = [np.flatnonzero(stratum == s) for s in range(2 * len(AGE_BANDS))]
    capacity = np.array([len(m) for m in members])
    quota = np.zeros(len(members), np.int64)
    remaining = sample_size
    open_ = capacity > 0
    while remaining > 0 and open_.any():
        idx = np.flatnonzero(open_)
        share, extra = divmod(remaining, len(idx))
        give = np.full(len(idx), share)
        give[:extra] += 1
        give = np.minimum(give, capacity[idx] - quota[idx])
        quota[idx] += give
        remaining -= int(give.sum())
        open_ = quota < capacity
    picks = [rng.choice(m, size=int(q), replace=False) for m, q in zip(members, quota) if q]
    return np.sort(np.concatenate(picks)) if picks else np.empty(0, np.int64)


@dataclass
class StratumStats:
    gender: str
    age_band: str
    n: int = 0
    empty: int = 0
    oversize: int = 0
    buckets: list[int] = field(default_factory=lambda: [0] * len(SIZE_BUCKETS))
    lt10: int = 0
    with_truth: int = 0
    hits: int = 0
    success_hits: int = 0
    eligible: int = 0
    eligible_hits: int = 0
    distinct_names: int = 0

    @property
    def successes(self) -> int:
        return self.n - self.empty - self.oversize

    def row(self, H: int) -> dict:
        def frac(a: int, b: int) -> float:
            return a / b if b else 0.0

        row = {
            "H": H, "gender": self.gender, "age_band": self.age_band, "n": self.n,
            "unsuccessful": frac(self.empty + self.oversize, self.n),
            "empty": frac(self.empty, self.n),
            "oversize": frac(self.oversize, self.n),
        }
        for (lo, hi), count in zip(SIZE_BUCKETS, self.buckets):
            row[f"size_{lo}" if lo == hi else f"size_{lo}_{hi}"] = frac(count, self.successes)
        row.update({
            "lt10": frac(self.lt10, self.n),
            "mean_distinct_names": frac(self.distinct_names, self.successes),
            "recall": frac(self.hits, self.with_truth),
            "success_recall": frac(self.success_hits, self.with_truth),
            "eligible_n": self.eligible,
            "eligible_recall": frac(self.eligible_hits, self.eligible),
        })
        return row


@dataclass
class CohortReport:
    H: int
    sample_size: int
    seed: int
    strata: list[StratumStats]
    results: list[MaidenNameResult] = field(default_factory=list, repr=False)

    def rows(self) -> list[dict]:
        return [s.row(self.H) for s in self.strata]

    def stratum(self, gender: str, age_band: str) -> StratumStats:
        for s in self.strata:
            if s.gender == gender and s.age_band == age_band:
                return s
        raise KeyError((gender, age_band))

    def to_csv(self, header: bool = True) -> str:
        rows = self.rows()
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        if header:
            w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"H": self.H, "sample_size": self.sample_size, "seed": self.seed, "strata": self.rows()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


_WORKER: dict = {}
NO_TRUTH = -2


def _init_worker(dataset: Dataset, config: InferenceConfig) -> None:
    _WORKER["search"] = _Search(dataset, config)


def _outcome(res: MaidenNameResult, truth_code: int) -> tuple[Status, int, int, bool]:
    """(status, |G|, distinct names, truth hit): all a cohort tally needs."""
    hit = truth_code >= 0 and bool((res.name_codes == truth_code).any())
    distinct = res.distinct_names if res.status is Status.SUCCESS else 0
    return res.status, res.size, distinct, hit


def _run_chunk(job: tuple[list[int], list[int] | None]):
    ids, codes = job
    search = _WORKER["search"]
    if codes is None:
        return [search.infer(v) for v in ids]
    return [_outcome(search.infer(v), c) for v, c in zip(ids, codes)]


def _run(dataset: Dataset, victims: list[int], config: InferenceConfig, threads: int,
         codes: list[int] | None) -> list:
    # Full results when codes is None, compact outcomes otherwise.
    if threads <= 1 or len(victims) < 2000 or os.name != "posix":
        search = _Search(dataset, config)
        if codes is None:
            return [search.infer(v) for v in victims]
        return [_outcome(search.infer(v), c) for v, c in zip(victims, codes)]
    chunk = max(1, len(victims) // (threads * 4))
    jobs = [(victims[i:i + chunk], None if codes is None else codes[i:i + chunk])
            for i in range(0, len(victims), chunk)]
    # Forked workers inherit the dataset without pickling it.
    _init_worker(dataset, config)
    with ProcessPoolExecutor(threads, mp_context=get_context("fork")) as pool:
        out: list = []
        for part in pool.map(_run_chunk, jobs):
            out.extend(part)
    return out


def run_victims(dataset: Dataset, victims: Sequence[int], config: InferenceConfig,
                threads: int = 1) -> list[MaidenNameResult]:
    """Infer every victim; worker processes return results in input order."""
    return _run(dataset, [int(v) for v in victims], config, threads, None)


def evaluate_cohort(
    dataset: Dataset,
    ground_truth: GroundTruth | None,
    sample_size: int,
    seed: int,
    config: InferenceConfig | None = None,
    *,
    threads: int = 1,
    keep_results: bool = False,
) -> CohortReport:
    """Run the attack on a stratified sample and tally per-stratum outcomes.

    With ground truth, ``recall`` counts victims whose true maiden name is in
    ``G``; ``eligible_recall`` restricts to victims whose mother and maternal
    grandfather are both in the dataset, the only ones the search can reach.
    """
    config = _check_config(dataset, config)
    if ground_truth is not None and len(ground_truth) != len(dataset):
        raise ValueError("ground truth is not aligned with the dataset")
    victims = stratified_sample(dataset, sample_size, seed).tolist()
    codes = [NO_TRUTH] * len(victims)
    if ground_truth is not None:
        codes = [NO_TRUTH if ground_truth.maiden_name[v] is None else dataset.code(ground_truth.maiden_name[v])
                 for v in victims]
    # Oversize sets can hold ~10^5 ids each, so only compact outcomes are
    # kept unless the caller asks for the results themselves.
    results = run_victims(dataset, victims, config, threads) if keep_results else []
    if keep_results:
        outcomes = [_outcome(r, c) for r, c in zip(results, codes)]
    else:
        outcomes = _run(dataset, victims, config, threads, codes)

    bands = age_band_of(dataset.age)
    strata = [StratumStats(g.value, band_label(b)) for g in Gender for b in AGE_BANDS]
    eligible = ground_truth.chain_complete() if ground_truth is not None else None
    for v, code, (status, size, distinct, hit) in zip(victims, codes, outcomes):
        st = strata[int(dataset.gender[v]) * len(AGE_BANDS) + int(bands[v])]
        st.n += 1
        if status is Status.EMPTY_RESULT:
            st.empty += 1
        elif status is Status.OVERSIZE_RESULT:
            st.oversize += 1
        else:
            for k, (lo, hi) in enumerate(SIZE_BUCKETS):
                if lo <= size <= hi:
                    st.buckets[k] += 1
            st.distinct_names += distinct
            if size < 10:
                st.lt10 += 1
        if code != NO_TRUTH:
            st.with_truth += 1
            st.hits += hit
            st.success_hits += hit and status is Status.SUCCESS
            if eligible[v]:
                st.eligible += 1
                st.eligible_hits += hit
    return CohortReport(config.H, sample_size, seed, strata, results)
