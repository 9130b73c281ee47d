"""Command-line entry point: ``reident <command> [options]``.

Exit status is 0 on success, 1 when inputs fail validation and 2 on I/O
errors. Every command that writes ``--out`` also writes ``<out>.manifest.json``
recording inputs (with hashes), arguments, seed, versions and wall time;
``reident replay <manifest>`` re-runs it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import platform
import sys
import time
from datetime import date
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .dataset import DEFAULT_REFERENCE_DATE, load_dataset, write_dataset
from .errors import ReidentError

log = logging.getLogger("reident")

DEFAULT_SEED = 2009
EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def _date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def default_threads() -> int:
    env = os.environ.get("REIDENT_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer REIDENT_THREADS=%r", env)
    return os.cpu_count() or 1


def read_config_file(path: str) -> dict[str, str]:
    """``key=value`` lines; ``#`` starts a comment. Dashes in keys become underscores."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ReidentError(f"{path}:{line_no}: expected key=value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def sha256_of(path: str | os.PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- commands -----------------------------------------------------------------

def cmd_synthgen(args) -> tuple[int, list[str]]:
    from .directory import write_directory
    from .synthgen import SynthConfig, generate_directory, generate_population, write_ground_truth

    overrides = dict(args.config_values)
    overrides.update(kv.split("=", 1) for kv in args.set)
    overrides["population_size"] = str(args.size)
    overrides["seed"] = str(args.seed)
    overrides["reference_date"] = args.reference_date.isoformat()
    known = set(SynthConfig.__dataclass_fields__)
    cfg = SynthConfig.from_strings({k: v for k, v in overrides.items() if k in known},
                                   SynthConfig.preset(args.preset))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dataset, truth = generate_population(cfg)
    directory, owners = generate_directory(dataset, cfg)
    paths = [out / "dataset.txt", out / "truth.txt", out / "directory.txt", out / "config.json"]
    write_dataset(dataset, paths[0])
    write_ground_truth(truth.with_directory(owners), paths[1])
    write_directory(directory, paths[2])
    paths[3].write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    log.info("wrote %d records, %d listings to %s", len(dataset), len(directory), out)
    return EXIT_OK, [str(p) for p in paths]


def _load(args):
    return load_dataset(args.dataset, args.reference_date, strict=args.strict)


def cmd_validate(args) -> tuple[int, list[str]]:
    ds = _load(args)
    report = {
        "dataset": args.dataset,
        "records": len(ds),
        "rejected": len(ds.rejected),
        "errors": [{"line": e.line_no, "field": e.field, "kind": type(e).__name__, "message": e.message}
                   for e in ds.rejected],
    }
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = ["line,field,kind,message"]
        lines += [f"{e['line']},{e['field'] or ''},{e['kind']},\"{e['message']}\"" for e in report["errors"]]
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    print(f"{len(ds)} records valid, {len(ds.rejected)} rejected", file=sys.stderr)
    return (EXIT_INVALID if ds.rejected else EXIT_OK), [args.out] if args.out else []


def cmd_uniqueness(args) -> tuple[int, list[str]]:
    from .uniqueness import DEFAULT_SPECS, parse_spec, reports_to_csv, reports_to_json, sweep

    specs = [parse_spec(s) for s in args.spec] if args.spec else list(DEFAULT_SPECS)
    ds = _load(args)
    reports = sweep(ds, specs)
    _write_text(args.out, reports_to_csv(reports) if args.format == "csv" else reports_to_json(reports))
    return EXIT_OK, [args.out] if args.out else []


def cmd_maiden_name(args) -> tuple[int, list[str]]:
    from .kinship import InferenceConfig, infer_maiden_name

    ds = _load(args)
    lines = []
    for H in args.H:
        res = infer_maiden_name(args.victim, ds, InferenceConfig(H=H, anonymity_cutoff=args.cutoff))
        lines.append(json.dumps({"H": H, **res.to_dict(ds)}, ensure_ascii=False))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK, [args.out] if args.out else []


def cmd_cohort(args) -> tuple[int, list[str]]:
    from .kinship import InferenceConfig, evaluate_cohort
    from .synthgen import load_ground_truth

    ds = _load(args)
    truth = load_ground_truth(args.truth, ds) if args.truth else None
    reports = [
        evaluate_cohort(ds, truth, args.sample, args.seed,
                        InferenceConfig(H=H, anonymity_cutoff=args.cutoff), threads=args.threads)
        for H in args.H
    ]
    if args.format == "csv":
        text = "".join(r.to_csv(header=(k == 0)) for k, r in enumerate(reports))
    else:
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    _write_text(args.out, text)
    return EXIT_OK, [args.out] if args.out else []


def cmd_directory_link(args) -> tuple[int, list[str]]:
    from .directory import QueryLog, linkage_stats, load_directory, sample_entries
    from .synthgen import load_ground_truth

    ds = _load(args)
    directory = load_directory(args.directory)
    n = len(directory) if args.sample is None else args.sample
    qlog = QueryLog()
    entries = sample_entries(directory, n, args.seed, qlog)
    report = linkage_stats(entries, ds, pages_fetched=qlog.pages)
    extra = {}
    if args.truth:
        truth = load_ground_truth(args.truth, ds)
        owned = [e for e in entries if e.entry_id in truth.directory_owner]
        contains = sum(
            1 for e in owned
            if report.anonymity_sets[e.entry_id]
            and ds.index_of(truth.directory_owner[e.entry_id]) in report.anonymity_sets[e.entry_id]
        )
        extra["owner_in_set"] = contains
    if args.format == "json":
        text = json.dumps({**report.to_dict(), **extra}, indent=2, sort_keys=True) + "\n"
    else:
        text = report.to_csv() + "".join(f"{k},{v}\n" for k, v in extra.items())
    _write_text(args.out, text)
    return EXIT_OK, [args.out] if args.out else []


def cmd_replay(args) -> tuple[int, list[str]]:
    manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
    for path, digest in manifest.get("inputs", {}).items():
        if not os.path.exists(path):
            raise FileNotFoundError(path)
        if sha256_of(path) != digest:
            log.warning("input %s changed since the manifest was written", path)
    return run(manifest["argv"]), []


# -- parser -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, dataset: bool = True) -> None:
    if dataset:
        p.add_argument("--dataset", required=True, help="registry file")
        p.add_argument("--strict", action="store_true", help="abort on the first malformed row")
    p.add_argument("--reference-date", type=_date, default=DEFAULT_REFERENCE_DATE, help="YYYY-MM-DD")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--config", help="key=value file supplying defaults")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env REIDENT_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reident", description="Re-identification risk audit toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthgen", help="generate a synthetic registry, ground truth and directory")
    _common(p, dataset=False)
    p.add_argument("--size", type=int, default=10_000)
    p.add_argument("--preset", default="default-tr")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="generator parameter")
    p.set_defaults(func=cmd_synthgen)

    p = sub.add_parser("validate", help="parse a registry and report rejected rows")
    _common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("uniqueness", help="equivalence-class sweep over quasi-identifier specs")
    _common(p)
    p.add_argument("--spec", action="append", help="compact spec such as G,D0,C,A0 (repeatable)")
    p.set_defaults(func=cmd_uniqueness)

    p = sub.add_parser("maiden-name", help="infer one victim's mother's maiden name")
    _common(p)
    p.add_argument("--victim", required=True, help="national id")
    p.add_argument("--H", type=int, nargs="+", default=[15])
    p.add_argument("--cutoff", type=int, default=100)
    p.set_defaults(func=cmd_maiden_name)

    p = sub.add_parser("cohort", help="stratified maiden-name attack evaluation")
    _common(p)
    p.add_argument("--truth", help="ground-truth file for recall")
    p.add_argument("--sample", type=int, default=20_000)
    p.add_argument("--H", type=int, nargs="+", default=[15])
    p.add_argument("--cutoff", type=int, default=100)
    p.set_defaults(func=cmd_cohort)

    p = sub.add_parser("directory", help="phone-directory attacks")
    dsub = p.add_subparsers(dest="action", required=True)
    q = dsub.add_parser("link", help="link sampled listings to registry records")
    _common(q)
    q.add_argument("--directory", required=True)
    q.add_argument("--sample", type=int, default=None)
    q.add_argument("--truth", help="ground-truth file to check owners")
    q.set_defaults(func=cmd_directory_link)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_replay)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    args.config_values = {}
    if getattr(args, "config", None):
        values = read_config_file(args.config)
        args.config_values = values
        explicit = {a.split("=", 1)[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
        for key, raw in values.items():
            if key in explicit or not hasattr(args, key) or key in ("config", "func", "command"):
                continue
            current = getattr(args, key)
            if isinstance(current, list):
                value = [int(x) for x in raw.replace(",", " ").split()] if key == "H" else raw.split()
            elif isinstance(current, bool):
                value = raw.lower() in ("1", "true", "yes")
            elif key == "reference_date":
                value = _date(raw)
            elif isinstance(current, int) or key in ("threads", "sample"):
                value = int(raw)
            else:
                value = raw
            setattr(args, key, value)
    if getattr(args, "threads", 1) is None:
        args.threads = default_threads()
    return args


def _manifest(argv: list[str], args, outputs: list[str], started: float, status: int) -> dict:
    inputs = {}
    for key in ("dataset", "truth", "directory", "config"):
        path = getattr(args, key, None)
        if path and os.path.exists(path):
            inputs[path] = sha256_of(path)
    return {
        "tool": "reident",
        "version": __version__,
        "command": args.command,
        "argv": argv,
        "seed": getattr(args, "seed", None),
        "inputs": inputs,
        "outputs": {p: sha256_of(p) for p in outputs if p and p != "-" and os.path.isfile(p)},
        "exit_status": status,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "backend": kernels.BACKEND,
        "wall_time_s": round(time.perf_counter() - started, 3),
    }


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except FileNotFoundError as exc:
        print(f"reident: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ReidentError, ValueError) as exc:
        print(f"reident: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    started = time.perf_counter()
    try:
        status, outputs = args.func(args)
    except OSError as exc:
        print(f"reident: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ReidentError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"reident: error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    if args.command != "replay" and getattr(args, "out", None) and args.out != "-":
        out = Path(args.out)
        target = out / "manifest.json" if out.is_dir() else Path(f"{out}.manifest.json")
        target.write_text(json.dumps(_manifest(argv, args, outputs, started, status), indent=2) + "\n",
                          encoding="utf-8")
    return status


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else list(argv)))
