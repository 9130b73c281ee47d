"""Deterministic name and place pools for the synthetic population.

Pools start with common real names and continue with syllable compounds, so
the head of every Zipf draw looks familiar and the tail stays unique. Nothing
here depends on a random seed.
"""

from __future__ import annotations

import hashlib
from itertools import product

MALE_COMMON = (
    "MEHMET", "MUSTAFA", "AHMET", "ALİ", "HÜSEYİN", "HASAN", "İBRAHİM", "İSMAİL",
    "OSMAN", "YUSUF", "MURAT", "ÖMER", "RAMAZAN", "HALİL", "SÜLEYMAN", "ABDULLAH",
    "MAHMUT", "SALİH", "RECEP", "KEMAL", "FATİH", "KADİR", "EMRE", "HAKAN",
    "ADEM", "METİN", "MEHMET ALİ", "BURAK", "ORHAN", "CEMAL", "SERKAN", "YAŞAR",
    "ERKAN", "UĞUR", "DURSUN", "VOLKAN", "GÖKHAN", "ENGİN", "SİNAN", "TUNCAY",
)
FEMALE_COMMON = (
    "FATMA", "AYŞE", "EMİNE", "HATİCE", "ZEYNEP", "ELİF", "MERYEM", "ŞERİFE",
    "ZEHRA", "SULTAN", "HANİFE", "MERVE", "HAVVA", "ZELİHA", "ESRA", "FADİME",
    "ÖZLEM", "HACER", "YASEMİN", "HÜLYA", "CEMİLE", "SEVGİ", "GÜLSÜM", "LEYLA",
    "DİLEK", "BÜŞRA", "AYTEN", "KÜBRA", "SEVİM", "MELEK", "EBRU", "GÜLAY",
    "NURAY", "SEDA", "SONGÜL", "TÜLAY", "FİLİZ", "PINAR", "GÜLTEN", "NESRİN",
)
LAST_COMMON = (
    "YILMAZ", "KAYA", "DEMİR", "ŞAHİN", "ÇELİK", "YILDIZ", "YILDIRIM", "ÖZTÜRK",
    "AYDIN", "ÖZDEMİR", "ARSLAN", "DOĞAN", "KILIÇ", "ASLAN", "ÇETİN", "KARA",
    "KOÇ", "KURT", "ÖZKAN", "ŞİMŞEK", "POLAT", "ÖZCAN", "KORKMAZ", "ÇAKIR",
    "ERDOĞAN", "YAVUZ", "CAN", "ACAR", "ŞEN", "AKTAŞ", "GÜLER", "YALÇIN",
    "GÜNEŞ", "BOZKURT", "BULUT", "KESKİN", "ÜNAL", "TURAN", "GÜL", "ÖZER",
    "IŞIK", "KAPLAN", "AVCI", "SARI", "TEKİN", "TAŞ", "KÖSE", "YÜKSEL", "ATEŞ", "AKSOY",
)
PROVINCES = (
    "ADANA", "ADIYAMAN", "AFYONKARAHİSAR", "AĞRI", "AMASYA", "ANKARA", "ANTALYA",
    "ARTVİN", "AYDIN", "BALIKESİR", "BİLECİK", "BİNGÖL", "BİTLİS", "BOLU", "BURDUR",
    "BURSA", "ÇANAKKALE", "ÇANKIRI", "ÇORUM", "DENİZLİ", "DİYARBAKIR", "EDİRNE",
    "ELAZIĞ", "ERZİNCAN", "ERZURUM", "ESKİŞEHİR", "GAZİANTEP", "GİRESUN",
    "GÜMÜŞHANE", "HAKKARİ", "HATAY", "ISPARTA", "MERSİN", "İSTANBUL", "İZMİR",
    "KARS", "KASTAMONU", "KAYSERİ", "KIRKLARELİ", "KIRŞEHİR", "KOCAELİ", "KONYA",
    "KÜTAHYA", "MALATYA", "MANİSA", "KAHRAMANMARAŞ", "MARDİN", "MUĞLA", "MUŞ",
    "NEVŞEHİR", "NİĞDE", "ORDU", "RİZE", "SAKARYA", "SAMSUN", "SİİRT", "SİNOP",
    "SİVAS", "TEKİRDAĞ", "TOKAT", "TRABZON", "TUNCELİ", "ŞANLIURFA", "UŞAK", "VAN",
    "YOZGAT", "ZONGULDAK", "AKSARAY", "BAYBURT", "KARAMAN", "KIRIKKALE", "BATMAN",
    "ŞIRNAK", "BARTIN", "ARDAHAN", "IĞDIR", "YALOVA", "KARABÜK", "KİLİS", "OSMANİYE",
    "DÜZCE",
)
# Largest provinces first so a Zipf draw over this order is plausible.
PROVINCES_BY_SIZE = ("İSTANBUL", "ANKARA", "İZMİR", "BURSA", "ADANA", "KONYA", "ANTALYA", "GAZİANTEP") + tuple(
    p for p in PROVINCES if p not in {"İSTANBUL", "ANKARA", "İZMİR", "BURSA", "ADANA", "KONYA", "ANTALYA", "GAZİANTEP"}
)

_MALE_HEADS = ("AL", "BA", "BUR", "CE", "DO", "EM", "ER", "GÖK", "HA", "İL", "KA", "KE",
               "MU", "NA", "OR", "ÖZ", "SE", "SU", "TA", "TU", "UĞ", "VE", "YA", "YU", "ZA")
_MALE_MIDS = ("", "HAN", "LA", "RA", "TAN", "KI", "DU", "SA", "Nİ", "RU", "LU", "MİR")
_MALE_TAILS = ("ALP", "BEY", "CAN", "DAR", "DEM", "ER", "GÜN", "HAN", "KAN", "KUT", "MET",
               "NUR", "RAT", "SAN", "TAY", "TEKİN", "TUĞ", "VAR", "YİĞİT", "Z")
_FEMALE_HEADS = ("AY", "BE", "CE", "DE", "E", "FE", "GÜL", "HA", "İ", "LA", "ME", "NA",
                 "NUR", "Ö", "PE", "SE", "SU", "ŞE", "TÜ", "YA", "ZE", "Dİ", "FA", "GÖ", "İPEK")
_FEMALE_MIDS = ("", "Lİ", "Rİ", "Mİ", "Nİ", "VA", "DA", "SE", "LA", "RE", "Fİ", "YE")
_FEMALE_TAILS = ("A", "AY", "CE", "GÜL", "HAN", "LEK", "LİZ", "NAZ", "NUR", "RA", "RİN",
                 "SU", "ŞEN", "TEN", "YE", "ZE", "DA", "MA", "NE", "Lİ")
_LAST_HEADS = ("AK", "AL", "BAŞ", "BOZ", "ÇAM", "DAĞ", "DEM", "DUR", "ER", "GÜN", "GÜR",
               "KAR", "KOÇ", "KUR", "OK", "ÖZ", "SAR", "SEV", "TAŞ", "TEK", "TOP", "UY",
               "YAZ", "YÜCE", "ŞEN", "ÇİFT", "KAYA", "DEMİR", "ARAS", "ELMA")
_LAST_MIDS = ("", "AN", "IN", "ER", "AR", "GÜL", "SU", "TAN", "OĞ", "DEN")
_LAST_TAILS = ("OĞLU", "ER", "GİL", "TÜRK", "KAYA", "DAĞ", "SOY", "TEKİN", "ALP", "CAN",
               "LI", "Cİ", "KAN", "BAY", "OCAK", "ÖZ", "TEPE", "YOL", "KÖK", "ASLAN")
_SYLLABLES = ("BA", "CE", "DO", "FE", "GA", "HU", "KE", "LA", "MO", "NE",
              "PA", "RU", "SE", "TA", "VU", "YE", "ZO", "ÇI", "ŞA", "ÖL")


def _stable_order(names) -> list[str]:
    return sorted(set(names), key=lambda s: hashlib.md5(s.encode("utf-8")).digest())


def _pool(common: tuple[str, ...], heads, mids, tails, size: int) -> tuple[str, ...]:
    seen = set(common)
    tail = [h + m + t for h, m, t in product(heads, mids, tails)]
    out = list(common)
    for name in _stable_order(n for n in tail if n not in seen):
        if len(out) >= size:
            break
        out.append(name)
    k = 0
    while len(out) < size:
        name = syllable_name(k)
        k += 1
        if name not in seen:
            seen.add(name)
            out.append(name)
    return tuple(out[:size])


def syllable_name(k: int) -> str:
    """Bijective base-20 syllable spelling of ``k``: unique for every k >= 0."""
    parts = []
    k += 1
    base = len(_SYLLABLES)
    while k > 0:
        k -= 1
        parts.append(_SYLLABLES[k % base])
        k //= base
    return "".join(reversed(parts))


def male_first_names(size: int = 2000) -> tuple[str, ...]:
    return _pool(MALE_COMMON, _MALE_HEADS, _MALE_MIDS, _MALE_TAILS, size)


def female_first_names(size: int = 2000) -> tuple[str, ...]:
    return _pool(FEMALE_COMMON, _FEMALE_HEADS, _FEMALE_MIDS, _FEMALE_TAILS, size)


def last_names(size: int = 5000) -> tuple[str, ...]:
    return _pool(LAST_COMMON, _LAST_HEADS, _LAST_MIDS, _LAST_TAILS, size)
