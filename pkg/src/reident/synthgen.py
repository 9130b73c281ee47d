"""Seeded synthetic registries with three-generation families.

Every population comes with a :class:`GroundTruth` recording true mothers,
fathers, maiden names and marital status, so the inference attacks can be
scored. The generator is vectorized over numpy arrays and runs on a single
``numpy.random.Generator``; equal configs give byte-identical files.

Family model, oldest generation first:

* founder couples (born 1920-1950); the wife takes the husband's surname
  unless she retains her maiden name;
* their adult children, who pair up across families into married couples or
  stay single; single ones live with their parents with
  ``adult_child_cohabit_prob``, otherwise alone;
* the adult children of those couples, who either cohabit with their parents
  or leave, and leavers pair up into married couples.

Divorced wives resume their maiden surname and move out; cohabiting children
of a divorced couple live with either parent. Parents are then removed with a
probability that grows with their oldest child's age, and the population is
topped up with unrelated adults (or trimmed of unmarried youngest-generation
leaves) to hit ``population_size`` exactly.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from datetime import date
from enum import Enum

import numpy as np

from . import names as pools
from .dataset import (
    ADULT_AGE,
    Address,
    DEFAULT_REFERENCE_DATE,
    Dataset,
    date_to_days,
    split_days,
    ymd_to_days,
)
from .errors import ConfigError

YEAR = 365
FOUNDER_BIRTH_RANGE = (date(1920, 1, 1), date(1950, 12, 31))
# Wife's birth relative to husband's, in days (negative: wife older).
SPOUSE_GAP_DAYS = (-3 * YEAR, 8 * YEAR)
FOUNDER_CHILDREN_MEAN = 3.0
PARENT_CHILDREN_MEAN = 2.2
MIDDLE_MARRIAGE_PROB = 0.85
YOUNG_MARRIAGE_PROB = 0.6
PERSONS_PER_NEIGHBORHOOD = 800
STREETS_PER_NEIGHBORHOOD = 25
NEIGHBORHOODS_PER_DISTRICT = 8
STAY_IN_CITY_PROB = 0.6
DECEASED_AGE_SCALE = 30.0


class MaritalStatus(str, Enum):
    SINGLE = "single"
    MARRIED = "married"
    DIVORCED = "divorced"


_MARITAL_BY_CODE = (MaritalStatus.SINGLE, MaritalStatus.MARRIED, MaritalStatus.DIVORCED)


@dataclass(frozen=True)
class SynthConfig:
    population_size: int = 10_000
    seed: int = 2009
    name_zipf_exponent: float = 1.2
    maiden_name_retention_prob: float = 0.05
    divorce_prob: float = 0.08
    # Per-parent base rate; scaled by oldest child's age / 30.
    deceased_parent_prob: float = 0.04
    adult_child_cohabit_prob: float = 0.35
    min_parent_age_gap: int = 18
    max_parent_age_gap: int = 40
    directory_coverage: float = 0.5
    directory_move_rate: float = 0.286
    first_name_pool_size: int = 2000
    last_name_pool_size: int = 5000
    # Every person gets a distinct first name, so nobody has a namesake.
    namesake_free: bool = False
    reference_date: date = DEFAULT_REFERENCE_DATE

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.population_size, int) or self.population_size < 0:
            raise ConfigError(f"population_size must be a non-negative integer, got {self.population_size!r}")
        if not isinstance(self.seed, int) or not -(2**63) <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit integer, got {self.seed!r}")
        if not self.name_zipf_exponent > 0:
            raise ConfigError("name_zipf_exponent must be > 0")
        for name in ("maiden_name_retention_prob", "divorce_prob", "deceased_parent_prob",
                     "adult_child_cohabit_prob", "directory_coverage", "directory_move_rate"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p!r}")
        if self.min_parent_age_gap < 15:
            raise ConfigError("min_parent_age_gap must be >= 15")
        if self.max_parent_age_gap < self.min_parent_age_gap:
            raise ConfigError("max_parent_age_gap must be >= min_parent_age_gap")
        if self.first_name_pool_size < 1 or self.last_name_pool_size < 1:
            raise ConfigError("name pools must be non-empty")

    @classmethod
    def preset(cls, name: str, **overrides) -> "SynthConfig":
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return replace(PRESETS[name], **overrides)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["reference_date"] = self.reference_date.isoformat()
        return d

    @classmethod
    def from_strings(cls, values: dict[str, str], base: "SynthConfig | None" = None) -> "SynthConfig":
        """Build from ``key=value`` text pairs (config files, ``--set``)."""
        base = base or cls()
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in types:
                raise ConfigError(f"unknown config key {key!r}")
            current = getattr(base, key)
            try:
                if isinstance(current, bool):
                    if raw.lower() not in ("1", "0", "true", "false", "yes", "no"):
                        raise ValueError(raw)
                    kwargs[key] = raw.lower() in ("1", "true", "yes")
                elif isinstance(current, int):
                    kwargs[key] = int(raw)
                elif isinstance(current, float):
                    kwargs[key] = float(raw)
                elif isinstance(current, date):
                    kwargs[key] = date.fromisoformat(raw)
                else:
                    kwargs[key] = raw
            except ValueError:
                raise ConfigError(f"bad value for {key}: {raw!r}") from None
        return replace(base, **kwargs)


PRESETS: dict[str, SynthConfig] = {
    "default-tr": SynthConfig(),
    # Every family satisfies the inference assumptions.
    "ideal": SynthConfig(
        adult_child_cohabit_prob=1.0,
        deceased_parent_prob=0.0,
        divorce_prob=0.0,
        maiden_name_retention_prob=0.0,
    ),
}


# -- ground truth -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroundTruth:
    """Generator-side truth aligned with dataset record ids.

    ``mother_id``/``father_id`` hold the parent's record id or -1 when the
    parent is not in the dataset. ``maiden_name`` is the mother's birth
    surname, or ``None`` for founders whose mother was never generated.
    ``generation`` is 1 for founders, 2 and 3 for their descendants and 0
    for unrelated adults added to reach the target size.
    """

    national_ids: tuple[str, ...]
    mother_id: np.ndarray
    father_id: np.ndarray
    maiden_name: tuple[str | None, ...]
    marital: np.ndarray
    directory_owner: dict[int, str]
    generation: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.national_ids)

    @property
    def true_mother(self) -> dict[str, str]:
        ids = self.national_ids
        return {ids[i]: ids[m] for i, m in enumerate(self.mother_id.tolist()) if m >= 0}

    @property
    def true_father(self) -> dict[str, str]:
        ids = self.national_ids
        return {ids[i]: ids[f] for i, f in enumerate(self.father_id.tolist()) if f >= 0}

    @property
    def true_maiden_name(self) -> dict[str, str]:
        return {self.national_ids[i]: m for i, m in enumerate(self.maiden_name) if m is not None}

    @property
    def true_marital_status(self) -> dict[str, MaritalStatus]:
        return {self.national_ids[i]: _MARITAL_BY_CODE[c] for i, c in enumerate(self.marital.tolist())}

    def maternal_grandfather_id(self, record_id: int) -> int:
        m = int(self.mother_id[record_id])
        return int(self.father_id[m]) if m >= 0 else -1

    def chain_complete(self) -> np.ndarray:
        """Mask of records whose mother and maternal grandfather are both present."""
        m = self.mother_id
        has_mother = m >= 0
        gf = np.full(len(m), -1, np.int64)
        gf[has_mother] = self.father_id[m[has_mother]]
        return has_mother & (gf >= 0)

    def with_directory(self, owners: dict[int, str]) -> "GroundTruth":
        return replace(self, directory_owner=dict(owners))


def write_ground_truth(truth: GroundTruth, path: str | os.PathLike) -> None:
    ids = truth.national_ids
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# kind|key|value\n")
        mother = truth.mother_id.tolist()
        father = truth.father_id.tolist()
        marital = truth.marital.tolist()
        generation = truth.generation.tolist() if truth.generation is not None else None
        for i, nid in enumerate(ids):
            if mother[i] >= 0:
                fh.write(f"mother|{nid}|{ids[mother[i]]}\n")
            if father[i] >= 0:
                fh.write(f"father|{nid}|{ids[father[i]]}\n")
            if truth.maiden_name[i] is not None:
                fh.write(f"maiden|{nid}|{truth.maiden_name[i]}\n")
            fh.write(f"marital|{nid}|{_MARITAL_BY_CODE[marital[i]].value}\n")
            if generation is not None:
                fh.write(f"generation|{nid}|{generation[i]}\n")
        for entry_id in sorted(truth.directory_owner):
            fh.write(f"owner|{entry_id}|{truth.directory_owner[entry_id]}\n")


def load_ground_truth(path: str | os.PathLike, dataset: Dataset) -> GroundTruth:
    """Read a truth file and align it with ``dataset`` record ids.

    Links that name citizens absent from the dataset are dropped.
    """
    n = len(dataset)
    mother = np.full(n, -1, np.int64)
    father = np.full(n, -1, np.int64)
    maiden: list[str | None] = [None] * n
    marital = np.zeros(n, np.uint8)
    generation = np.zeros(n, np.uint8)
    owners: dict[int, str] = {}
    codes = {s.value: i for i, s in enumerate(_MARITAL_BY_CODE)}

    def rid(nid: str) -> int:
        try:
            return dataset.index_of(nid)
        except KeyError:
            return -1

    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if line.startswith("#") or not line.strip():
                continue
            parts = line.rstrip("\r\n").split("|")
            if len(parts) != 3:
                raise ConfigError(f"{path}:{line_no}: expected kind|key|value")
            kind, key, value = parts
            if kind == "owner":
                owners[int(key)] = value
                continue
            i = rid(key)
            if i < 0:
                continue
            if kind == "mother":
                mother[i] = rid(value)
            elif kind == "father":
                father[i] = rid(value)
            elif kind == "maiden":
                maiden[i] = value
            elif kind == "marital":
                if value not in codes:
                    raise ConfigError(f"{path}:{line_no}: unknown marital status {value!r}")
                marital[i] = codes[value]
            elif kind == "generation":
                generation[i] = int(value)
            else:
                raise ConfigError(f"{path}:{line_no}: unknown kind {kind!r}")
    return GroundTruth(
        national_ids=tuple(dataset.nid_str(i) for i in range(n)),
        mother_id=mother, father_id=father, maiden_name=tuple(maiden),
        marital=marital, directory_owner=owners, generation=generation,
    )


# -- vectorized date helpers ------------------------------------------------

def add_years(days: np.ndarray, years: int, *, round_up: bool) -> np.ndarray:
    """Same calendar day ``years`` later; Feb 29 maps to Mar 1 or Feb 28."""
    y, m, d = split_days(days)
    y = y + years
    leap = (y % 4 == 0) & ((y % 100 != 0) | (y % 400 == 0))
    feb29 = (m == 2) & (d == 29) & ~leap
    if round_up:
        m = np.where(feb29, 3, m)
        d = np.where(feb29, 1, d)
    else:
        d = np.where(feb29, 28, d)
    return ymd_to_days(y, m, d)


# -- population simulation --------------------------------------------------

class _StringTable:
    def __init__(self):
        self.strings: list[str] = [""]
        self.codes: dict[str, int] = {"": 0}

    def add_all(self, values) -> np.ndarray:
        out = np.empty(len(values), np.int32)
        for i, v in enumerate(values):
            c = self.codes.get(v)
            if c is None:
                c = self.codes[v] = len(self.strings)
                self.strings.append(v)
            out[i] = c
        return out


def _zipf_probs(size: int, exponent: float) -> np.ndarray:
    w = np.arange(1, size + 1, dtype=np.float64) ** -exponent
    return w / w.sum()


class _People:
    """Growing columnar person table used during simulation."""

    COLS = ("gender", "first", "last", "maiden", "mother_first", "father_first",
            "birth", "mother", "father", "household", "spouse", "marital", "generation")

    def __init__(self):
        self.parts: dict[str, list[np.ndarray]] = {c: [] for c in self.COLS}
        self.n = 0

    def add(self, **cols) -> np.ndarray:
        k = len(cols["gender"])
        defaults = {"mother": -1, "father": -1, "household": -1, "spouse": -1, "marital": 0}
        for c in self.COLS:
            v = cols.get(c, defaults.get(c))
            arr = np.full(k, v, np.int64) if np.isscalar(v) else np.asarray(v, np.int64)
            self.parts[c].append(arr)
        ids = np.arange(self.n, self.n + k, dtype=np.int64)
        self.n += k
        return ids

    def freeze(self) -> dict[str, np.ndarray]:
        return {c: (np.concatenate(v) if v else np.empty(0, np.int64)) for c, v in self.parts.items()}


class _Sim:
    def __init__(self, cfg: SynthConfig, rng: np.random.Generator, table: _StringTable):
        self.cfg = cfg
        self.rng = rng
        self.male = table.add_all(pools.male_first_names(cfg.first_name_pool_size))
        self.female = table.add_all(pools.female_first_names(cfg.first_name_pool_size))
        self.surnames = table.add_all(pools.last_names(cfg.last_name_pool_size))
        self.p_first = _zipf_probs(cfg.first_name_pool_size, cfg.name_zipf_exponent)
        self.p_last = _zipf_probs(cfg.last_name_pool_size, cfg.name_zipf_exponent)
        # Latest birth date that is still adult at the reference date.
        ref = np.array([date_to_days(cfg.reference_date)])
        self.adult_cutoff = int(add_years(ref, -ADULT_AGE, round_up=False)[0])
        self.people = _People()
        self.n_households = 0
        self.household_parent: list[np.ndarray] = []

    # draws

    def first_names(self, gender: np.ndarray) -> np.ndarray:
        ranks = self.rng.choice(len(self.p_first), size=len(gender), p=self.p_first)
        return np.where(gender == 0, self.male[ranks], self.female[ranks]).astype(np.int64)

    def last_names(self, k: int) -> np.ndarray:
        return self.surnames[self.rng.choice(len(self.p_last), size=k, p=self.p_last)].astype(np.int64)

    def new_households(self, k: int, parent_household: np.ndarray | None = None) -> np.ndarray:
        ids = np.arange(self.n_households, self.n_households + k, dtype=np.int64)
        self.n_households += k
        parent = np.full(k, -1, np.int64) if parent_household is None else np.asarray(parent_household, np.int64)
        self.household_parent.append(parent)
        return ids

    # steps

    def founders(self, n1: int) -> dict[str, np.ndarray]:
        rng, cfg = self.rng, self.cfg
        lo, hi = (date_to_days(d) for d in FOUNDER_BIRTH_RANGE)
        hb = rng.integers(lo, hi + 1, size=n1)
        wb = hb + rng.integers(SPOUSE_GAP_DAYS[0], SPOUSE_GAP_DAYS[1] + 1, size=n1)
        wb = np.minimum(wb, self.adult_cutoff)
        surname = self.last_names(n1)
        w_maiden = self.last_names(n1)
        male = np.zeros(n1, np.int64)
        female = np.ones(n1, np.int64)
        h_first = self.first_names(male)
        w_first = self.first_names(female)
        retain = rng.random(n1) < cfg.maiden_name_retention_prob
        divorced = rng.random(n1) < cfg.divorce_prob
        w_last = np.where(retain | divorced, w_maiden, surname)
        hh = self.new_households(n1)
        w_hh = hh.copy()
        if divorced.any():
            w_hh[divorced] = self.new_households(int(divorced.sum()), hh[divorced])
        status = np.where(divorced, 2, 1)
        p = self.people
        husbands = p.add(gender=male, first=h_first, last=surname, maiden=surname,
                         mother_first=self.first_names(female), father_first=self.first_names(male),
                         birth=hb, household=hh, marital=status, generation=1)
        wives = p.add(gender=female, first=w_first, last=w_last, maiden=w_maiden,
                      mother_first=self.first_names(female), father_first=self.first_names(male),
                      birth=wb, household=w_hh, marital=status, generation=1)
        p.parts["spouse"][-2][:] = wives
        p.parts["spouse"][-1][:] = husbands
        return {"husband": husbands, "wife": wives, "h_hh": hh, "w_hh": w_hh,
                "surname": surname, "h_first": h_first, "w_first": w_first, "w_maiden": w_maiden,
                "hb": hb, "wb": wb, "divorced": divorced}

    def children(self, couples: dict[str, np.ndarray], mean: float, generation: int) -> dict[str, np.ndarray]:
        """Adult children of ``couples``; births fall inside both parents' age-gap windows."""
        rng, cfg = self.rng, self.cfg
        counts = np.minimum(rng.poisson(mean, size=len(couples["husband"])), 8)
        c = np.repeat(np.arange(len(counts)), counts)
        hb, wb = couples["hb"][c], couples["wb"][c]
        lo = add_years(np.maximum(hb, wb), cfg.min_parent_age_gap, round_up=True)
        hi = np.minimum(add_years(np.minimum(hb, wb), cfg.max_parent_age_gap, round_up=False), self.adult_cutoff)
        birth = lo + np.floor(rng.random(len(c)) * (hi - lo + 1)).astype(np.int64)
        keep = lo <= hi
        c, birth = c[keep], birth[keep]
        gender = (rng.random(len(c)) < 0.5).astype(np.int64)
        ids = self.people.add(
            gender=gender, first=self.first_names(gender), last=couples["surname"][c],
            maiden=couples["surname"][c], mother_first=couples["w_first"][c],
            father_first=couples["h_first"][c], birth=birth,
            mother=couples["wife"][c], father=couples["husband"][c], generation=generation,
        )
        return {"id": ids, "couple": c, "gender": gender, "birth": birth}

    def pair(self, sons: np.ndarray, daughters: np.ndarray, family: np.ndarray,
             birth: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Match sons to daughters of similar age from different families."""
        rng = self.rng
        m = min(len(sons), len(daughters))
        if m == 0:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        sons = np.sort(rng.choice(sons, size=m, replace=False))
        daughters = np.sort(rng.choice(daughters, size=m, replace=False))
        jitter_s = rng.normal(0, YEAR, size=m)
        jitter_d = rng.normal(0, YEAR, size=m)
        s = sons[np.argsort(birth[sons] + jitter_s, kind="stable")]
        # Rank-match against wives shifted by the mean spouse gap.
        shift = (SPOUSE_GAP_DAYS[0] + SPOUSE_GAP_DAYS[1]) / 2
        d = daughters[np.argsort(birth[daughters] - shift + jitter_d, kind="stable")]
        gap = birth[d] - birth[s]
        ok = (gap >= SPOUSE_GAP_DAYS[0]) & (gap <= SPOUSE_GAP_DAYS[1]) & (family[s] != family[d])
        return s[ok], d[ok]

    def marry(self, husbands: np.ndarray, wives: np.ndarray, parent_hh: np.ndarray,
              cols: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
        """Record marriages in the frozen column dict; returns couple arrays."""
        rng, cfg = self.rng, self.cfg
        k = len(husbands)
        retain = rng.random(k) < cfg.maiden_name_retention_prob
        divorced = rng.random(k) < cfg.divorce_prob
        hh = self.new_households(k, parent_hh)
        w_hh = hh.copy()
        if divorced.any():
            w_hh[divorced] = self.new_households(int(divorced.sum()), parent_hh[divorced])
        surname = cols["last"][husbands]
        cols["last"][wives] = np.where(retain | divorced, cols["maiden"][wives], surname)
        cols["household"][husbands] = hh
        cols["household"][wives] = w_hh
        cols["spouse"][husbands] = wives
        cols["spouse"][wives] = husbands
        status = np.where(divorced, 2, 1)
        cols["marital"][husbands] = status
        cols["marital"][wives] = status
        return {"husband": husbands, "wife": wives, "h_hh": hh, "w_hh": w_hh, "surname": surname,
                "h_first": cols["first"][husbands], "w_first": cols["first"][wives],
                "w_maiden": cols["maiden"][wives], "hb": cols["birth"][husbands],
                "wb": cols["birth"][wives], "divorced": divorced}

    def settle_children(self, kids: dict[str, np.ndarray], couples: dict[str, np.ndarray],
                        unmarried: np.ndarray, cols: dict[str, np.ndarray]) -> None:
        """Unmarried children cohabit with a parent or get their own household."""
        rng = self.rng
        ids = kids["id"][unmarried]
        c = kids["couple"][unmarried]
        cohabit = rng.random(len(ids)) < self.cfg.adult_child_cohabit_prob
        with_mother = rng.random(len(ids)) < 0.5
        parent_hh = np.where(couples["divorced"][c] & with_mother, couples["w_hh"][c], couples["h_hh"][c])
        hh = parent_hh.copy()
        alone = ~cohabit
        hh[alone] = self.new_households(int(alone.sum()), parent_hh[alone])
        cols["household"][ids] = hh

    def run(self, n1: int) -> dict[str, np.ndarray]:
        rng, cfg = self.rng, self.cfg
        g1 = self.founders(n1)
        g2 = self.children(g1, FOUNDER_CHILDREN_MEAN, 2)
        cols = self.people.freeze()

        family = np.full(self.people.n, -1, np.int64)
        family[g2["id"]] = g2["couple"]
        marrying = rng.random(len(g2["id"])) < MIDDLE_MARRIAGE_PROB
        sons = g2["id"][marrying & (g2["gender"] == 0)]
        daughters = g2["id"][marrying & (g2["gender"] == 1)]
        h2, w2 = self.pair(sons, daughters, family, cols["birth"])
        # A married couple's household sits near the husband's parents.
        h_parent_hh = cols["household"][cols["father"][h2]]
        g2c = self.marry(h2, w2, h_parent_hh, cols)
        married = np.zeros(self.people.n, bool)
        married[h2] = married[w2] = True
        self.settle_children(g2, g1, ~married[g2["id"]], cols)

        # Third generation: children of second-generation couples.
        self.people = _People()
        self.people.n = len(cols["gender"])
        g3 = self.children(g2c, PARENT_CHILDREN_MEAN, 3)
        new = self.people.freeze()
        cols = {k: np.concatenate([cols[k], new[k]]) for k in cols}
        family = np.full(len(cols["gender"]), -1, np.int64)
        family[g3["id"]] = g3["couple"]

        leave = rng.random(len(g3["id"])) >= cfg.adult_child_cohabit_prob
        marrying = leave & (rng.random(len(g3["id"])) < YOUNG_MARRIAGE_PROB)
        sons = g3["id"][marrying & (g3["gender"] == 0)]
        daughters = g3["id"][marrying & (g3["gender"] == 1)]
        h3, w3 = self.pair(sons, daughters, family, cols["birth"])
        g3_parent_hh = np.where(g2c["divorced"][g3["couple"]], g2c["w_hh"][g3["couple"]], g2c["h_hh"][g3["couple"]])
        parent_hh_of = np.full(len(cols["gender"]), -1, np.int64)
        parent_hh_of[g3["id"]] = g3_parent_hh
        self.marry(h3, w3, parent_hh_of[h3], cols)

        is_married = np.zeros(len(cols["gender"]), bool)
        is_married[h3] = is_married[w3] = True
        single = ~is_married[g3["id"]]
        ids = g3["id"][single]
        c = g3["couple"][single]
        with_mother = rng.random(len(ids)) < 0.5
        parent_hh = np.where(g2c["divorced"][c] & with_mother, g2c["w_hh"][c], g2c["h_hh"][c])
        hh = parent_hh.copy()
        alone = leave[single]
        hh[alone] = self.new_households(int(alone.sum()), parent_hh[alone])
        cols["household"][ids] = hh

        cols["alive"] = self._survival(cols)
        return cols

    def _survival(self, cols: dict[str, np.ndarray]) -> np.ndarray:
        n = len(cols["gender"])
        alive = np.ones(n, bool)
        if self.cfg.deceased_parent_prob <= 0 or n == 0:
            return alive
        y, m, d = split_days(cols["birth"])
        ref = self.cfg.reference_date
        age = ref.year - y - ((ref.month < m) | ((ref.month == m) & (ref.day < d)))
        oldest_child = np.zeros(n, np.int64)
        for parent in ("mother", "father"):
            has = cols[parent] >= 0
            np.maximum.at(oldest_child, cols[parent][has], age[has])
        p = np.minimum(1.0, self.cfg.deceased_parent_prob * oldest_child / DECEASED_AGE_SCALE)
        dies = (oldest_child > 0) & (self.rng.random(n) < p)
        alive[dies] = False
        return alive


def _seed_sequence(seed: int, stream: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed % 2**64, stream])


def _simulate(cfg: SynthConfig, n1: int, stream: int) -> tuple[dict[str, np.ndarray], _Sim, _StringTable]:
    table = _StringTable()
    sim = _Sim(cfg, np.random.default_rng(_seed_sequence(cfg.seed, stream)), table)
    cols = sim.run(n1) if n1 > 0 else {c: np.empty(0, np.int64) for c in _People.COLS} | {"alive": np.empty(0, bool)}
    return cols, sim, table


def _pad_singles(sim: _Sim, cols: dict[str, np.ndarray], k: int) -> dict[str, np.ndarray]:
    """Append ``k`` unrelated adults living alone."""
    if k <= 0:
        return cols
    rng = sim.rng
    gender = (rng.random(k) < 0.5).astype(np.int64)
    lo = date_to_days(FOUNDER_BIRTH_RANGE[0])
    birth = rng.integers(lo, sim.adult_cutoff + 1, size=k)
    surname = sim.last_names(k)
    new = {
        "gender": gender, "first": sim.first_names(gender), "last": surname, "maiden": surname,
        "mother_first": sim.first_names(np.ones(k, np.int64)),
        "father_first": sim.first_names(np.zeros(k, np.int64)),
        "birth": birth, "mother": np.full(k, -1, np.int64), "father": np.full(k, -1, np.int64),
        "household": sim.new_households(k), "spouse": np.full(k, -1, np.int64),
        "marital": np.zeros(k, np.int64), "generation": np.zeros(k, np.int64),
        "alive": np.ones(k, bool),
    }
    return {c: np.concatenate([cols[c], new[c]]) for c in cols}


def _trim(cols: dict[str, np.ndarray], excess: int) -> dict[str, np.ndarray]:
    """Drop ``excess`` living unmarried youngest-generation persons, newest first."""
    leaf = cols["alive"] & (cols["generation"] == 3) & (cols["spouse"] < 0)
    candidates = np.flatnonzero(leaf)[::-1][:excess]
    keep = np.ones(len(cols["gender"]), bool)
    keep[candidates] = False
    if keep.all():
        return cols
    remap = np.cumsum(keep) - 1
    out = {c: v[keep] for c, v in cols.items()}
    for c in ("mother", "father", "spouse"):
        ref = out[c]
        ok = ref >= 0
        still = np.zeros(len(ref), bool)
        still[ok] = keep[ref[ok]]
        out[c] = np.where(still, remap[np.maximum(ref, 0)], -1)
    return out


def _assign_geography(sim: _Sim, table: _StringTable, households: np.ndarray, n_target: int):
    """Addresses for every household id; unique at level 0 by construction."""
    rng = sim.rng
    n_hh = sim.n_households
    parent = np.concatenate(sim.household_parent) if sim.household_parent else np.empty(0, np.int64)

    n_nb = max(1, round(n_target / PERSONS_PER_NEIGHBORHOOD))
    cities = table.add_all(pools.PROVINCES_BY_SIZE)
    nb_city = rng.choice(len(cities), size=n_nb, p=_zipf_probs(len(cities), 0.9))
    # District = rank of the neighborhood inside its city, bucketed.
    nb_order = np.argsort(nb_city, kind="stable")
    rank_in_city = np.empty(n_nb, np.int64)
    starts = np.searchsorted(nb_city[nb_order], nb_city[nb_order], side="left")
    rank_in_city[nb_order] = np.arange(n_nb) - starts
    nb_district = rank_in_city // NEIGHBORHOODS_PER_DISTRICT
    max_district = int(nb_district.max()) + 1
    district_names = ["MERKEZ"] + [pools.syllable_name(400 + k) for k in range(1, max_district)]
    district_codes = table.add_all(district_names)
    nb_codes = table.add_all([f"{pools.syllable_name(k)} MAHALLESİ" for k in range(n_nb)])

    city_nbs_sorted = nb_order
    city_start = np.searchsorted(nb_city[nb_order], np.arange(len(cities)), side="left")
    city_count = np.bincount(nb_city, minlength=len(cities))

    hh_nb = np.empty(n_hh, np.int64)
    # Parents' households always precede their children's.
    roots = parent < 0
    hh_nb[roots] = rng.integers(0, n_nb, size=int(roots.sum()))
    pending = np.flatnonzero(~roots)
    stay = rng.random(len(pending)) < STAY_IN_CITY_PROB
    u = rng.random(len(pending))
    anywhere = rng.integers(0, n_nb, size=len(pending))
    # Resolve in creation order; parents have smaller ids, so a few passes settle all.
    resolved = roots.copy()
    while len(pending):
        ready = resolved[parent[pending]]
        idx = pending[ready]
        pc = nb_city[hh_nb[parent[idx]]]
        local = city_nbs_sorted[city_start[pc] + np.floor(u[ready] * city_count[pc]).astype(np.int64)]
        hh_nb[idx] = np.where(stay[ready], local, anywhere[ready])
        resolved[idx] = True
        pending, stay, u, anywhere = pending[~ready], stay[~ready], u[~ready], anywhere[~ready]

    used = np.unique(households)
    hh_street = np.zeros(n_hh, np.int64)
    hh_street[used] = rng.integers(1, STREETS_PER_NEIGHBORHOOD + 1, size=len(used))
    # Door numbers: rank of the household inside its (neighborhood, street).
    key = hh_nb[used] * (STREETS_PER_NEIGHBORHOOD + 1) + hh_street[used]
    order = np.argsort(key, kind="stable")
    first_of_run = np.searchsorted(key[order], key[order], side="left")
    door = np.zeros(n_hh, np.int64)
    door[used[order]] = np.arange(len(used)) - first_of_run + 1

    street_codes = table.add_all([f"{k}. SOKAK" for k in range(STREETS_PER_NEIGHBORHOOD + 1)])
    max_door = int(door.max()) if len(door) else 0
    door_codes = table.add_all([str(k) for k in range(max_door + 1)])
    nb = hh_nb[households]
    return {
        "door": door_codes[door[households]],
        "street": street_codes[hh_street[households]],
        "neighborhood": nb_codes[nb],
        "district": district_codes[nb_district[nb]],
        "city": cities[nb_city[nb]],
        "city_of_household": cities[nb_city[hh_nb]],
    }


_NID_MODULUS = 90_000_000_000
_NID_MULTIPLIER = 1_103_515_243  # coprime with the modulus


def _national_ids(k: int, rng: np.random.Generator) -> np.ndarray:
    offset = int(rng.integers(0, _NID_MODULUS))
    idx = np.arange(k, dtype=np.int64)
    return 10_000_000_000 + (idx * _NID_MULTIPLIER + offset) % _NID_MODULUS


def _persons_per_founder(cfg: SynthConfig) -> float:
    pilot = 2000
    cols, _, _ = _simulate(replace(cfg, population_size=pilot * 6), pilot, stream=99)
    return max(float(cols["alive"].sum()) / pilot, 1.0)


def generate_population(config: SynthConfig) -> tuple[Dataset, GroundTruth]:
    """Generate exactly ``config.population_size`` adults plus ground truth."""
    config.validate()
    cfg = config
    n_target = cfg.population_size
    empty_truth = GroundTruth((), np.empty(0, np.int64), np.empty(0, np.int64), (), np.empty(0, np.uint8), {},
                              np.empty(0, np.uint8))
    if n_target == 0:
        return Dataset([""], {c: np.empty(0) for c in (
            "national_id", "gender", "birth", "first", "last", "mother_first", "father_first", "birth_city",
            "reg_city", "reg_district", "door", "street", "neighborhood", "district", "city")},
            cfg.reference_date), empty_truth

    # Undershoot slightly and pad with unrelated adults.
    n1 = int(n_target * 0.97 / _persons_per_founder(cfg)) if n_target >= 50 else 0
    cols, sim, table = _simulate(cfg, n1, stream=0)
    have = int(cols["alive"].sum())
    if have > n_target:
        cols = _trim(cols, have - n_target)
        have = int(cols["alive"].sum())
    cols = _pad_singles(sim, cols, n_target - have)
    if int(cols["alive"].sum()) > n_target:
        raise AssertionError("population trimming could not reach the target size")

    if cfg.namesake_free:
        _make_names_unique(cols, table)

    geo = _assign_geography(sim, table, cols["household"], n_target)
    # Born where the mother lived; founders and padded adults anywhere.
    birth_city = np.where(
        cols["mother"] >= 0,
        geo["city_of_household"][cols["household"][np.maximum(cols["mother"], 0)]],
        geo["city"],
    )
    newcomer = cols["mother"] < 0
    if newcomer.any():
        cities = table.add_all(pools.PROVINCES_BY_SIZE)
        birth_city[newcomer] = cities[sim.rng.choice(len(cities), size=int(newcomer.sum()),
                                                     p=_zipf_probs(len(cities), 0.9))]

    alive_ids = np.flatnonzero(cols["alive"])
    order = alive_ids[sim.rng.permutation(len(alive_ids))]
    record_of = np.full(len(cols["gender"]), -1, np.int64)
    record_of[order] = np.arange(len(order))

    merkez = table.add_all(["MERKEZ"])[0]
    columns = {
        "national_id": _national_ids(len(order), sim.rng),
        "gender": cols["gender"][order],
        "birth": cols["birth"][order],
        "first": cols["first"][order],
        "last": cols["last"][order],
        "mother_first": cols["mother_first"][order],
        "father_first": cols["father_first"][order],
        "birth_city": birth_city[order],
        "reg_city": birth_city[order],
        "reg_district": np.full(len(order), merkez),
        "door": geo["door"][order],
        "street": geo["street"][order],
        "neighborhood": geo["neighborhood"][order],
        "district": geo["district"][order],
        "city": geo["city"][order],
    }
    dataset = Dataset(table.strings, columns, cfg.reference_date)

    def link(parent: np.ndarray) -> np.ndarray:
        p = parent[order]
        return np.where(p >= 0, record_of[np.maximum(p, 0)], -1)

    mother_person = cols["mother"][order]
    strings = table.strings
    maiden_codes = np.where(mother_person >= 0, cols["maiden"][np.maximum(mother_person, 0)], -1).tolist()
    truth = GroundTruth(
        national_ids=tuple(dataset.nid_str(i) for i in range(len(order))),
        mother_id=link(cols["mother"]),
        father_id=link(cols["father"]),
        maiden_name=tuple(strings[c] if c >= 0 else None for c in maiden_codes),
        marital=cols["marital"][order].astype(np.uint8),
        directory_owner={},
        generation=cols["generation"][order].astype(np.uint8),
    )
    return dataset, truth


def _make_names_unique(cols: dict[str, np.ndarray], table: _StringTable) -> None:
    """Give every person (and every unnamed founder parent) a distinct first name."""
    n = len(cols["gender"])
    first = table.add_all([pools.syllable_name(k) for k in range(n)])
    cols["first"] = first.astype(np.int64)
    extra = table.add_all([pools.syllable_name(n + k) for k in range(2 * n)])
    for parent, offset in (("mother", 0), ("father", n)):
        has = cols[parent] >= 0
        cols[f"{parent}_first"] = np.where(has, first[np.maximum(cols[parent], 0)], extra[offset + np.arange(n)])


# -- phone directory ----------------------------------------------------------

def generate_directory(dataset: Dataset, config: SynthConfig):
    """List a ``directory_coverage`` share of households in a phone book.

    Each listing names the household head (oldest man, else oldest resident)
    and shows the level-2 address. A ``directory_move_rate`` share of
    listings show a neighborhood that does not exist in the registry,
    modelling people who moved after the registry snapshot. Returns the
    :class:`~reident.directory.Directory` and the entry id -> national id
    ownership map.
    """
    from .directory import Directory, DirectoryEntry, area_codes_for

    config.validate()
    rng = np.random.default_rng(_seed_sequence(config.seed, 1))
    index = dataset.indexes.by_address_l0
    n_hh = len(index)
    if n_hh == 0 or len(dataset) == 0:
        return Directory([]), {}

    heads = np.empty(n_hh, np.int64)
    ids, offsets = index.ids, index.offsets
    # Sort residents within each household: men first, then oldest, then id.
    hh_of = np.repeat(np.arange(n_hh), np.diff(offsets))
    order = np.lexsort((ids, dataset.birth[ids], dataset.gender[ids], hh_of))
    heads[:] = ids[order][offsets[:-1]]

    n_listed = int(round(config.directory_coverage * n_hh))
    listed = np.sort(rng.choice(n_hh, size=n_listed, replace=False))
    n_moved = int(round(config.directory_move_rate * n_listed))
    moved = np.zeros(n_listed, bool)
    moved[rng.choice(n_listed, size=n_moved, replace=False)] = True

    s = dataset.strings
    codes = area_codes_for(sorted({s[c] for c in np.unique(dataset.city).tolist()}))
    local = (np.arange(n_listed, dtype=np.int64) * 7_654_321 + int(rng.integers(0, 9_000_000))) % 9_000_000 + 1_000_000
    existing = set(s[c] for c in np.unique(dataset.neighborhood).tolist())

    entries = []
    owners: dict[int, str] = {}
    fresh = 0
    for k, hh in enumerate(listed.tolist()):
        head = int(heads[hh])
        nb, district, city = (s[dataset.neighborhood[head]], s[dataset.district[head]], s[dataset.city[head]])
        if moved[k]:
            while True:
                fresh += 1
                candidate = f"YENİ {pools.syllable_name(fresh)} MAHALLESİ"
                if candidate not in existing:
                    break
            nb = candidate
        entry = DirectoryEntry(
            entry_id=k + 1,
            last_name=s[dataset.last[head]],
            first_name=s[dataset.first[head]],
            phone_number=f"{codes[city]}{int(local[k]):07d}",
            listed_address=Address("", "", nb, district, city),
        )
        entries.append(entry)
        owners[entry.entry_id] = dataset.nid_str(head)
    return Directory(entries), owners
