"""Re-identification risk auditing for census-style citizen registries."""

__version__ = "0.1.0"

from .dataset import Address, CitizenRecord, Dataset, Gender, age_of, load_dataset, normalize_name, parse_record
from .directory import Directory, DirectoryEntry, link_entry, linkage_stats, query_directory
from .kinship import InferenceConfig, MaidenNameResult, evaluate_cohort, infer_maiden_name, infer_marital_status
from .synthgen import GroundTruth, SynthConfig, generate_directory, generate_population
from .uniqueness import QuasiIdentifierSpec, equivalence_classes, parse_spec, sweep

__all__ = [
    "Address", "CitizenRecord", "Dataset", "Gender", "age_of", "load_dataset", "normalize_name", "parse_record",
    "Directory", "DirectoryEntry", "link_entry", "linkage_stats", "query_directory",
    "InferenceConfig", "MaidenNameResult", "evaluate_cohort", "infer_maiden_name", "infer_marital_status",
    "GroundTruth", "SynthConfig", "generate_directory", "generate_population",
    "QuasiIdentifierSpec", "equivalence_classes", "parse_spec", "sweep",
]
