"""Presentation catalog: discovery, validation, expected-metadata assertions.

Catalog files use the ordinary presentation grammar.  Lines starting with
``#!`` are ignored by the parser and carry catalog metadata::

    #! source transcribed: <note>   or   #! source derived: <note>
    #! expect class 3                (keys: p, n, class, rank, center, gamma2)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import AutzLabError
from .groups import RealizedGroup, center
from .invariants import derived_subgroup, nilpotency_class, rank
from .pcp import PcPresentation, parse_presentation, realize

EXPECT_KEYS = ("p", "n", "class", "rank", "center", "gamma2")


def default_catalog_dir() -> Path:
    return Path(str(resources.files("autzlab") / "data" / "catalog"))


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    path: Path
    presentation: PcPresentation
    group: RealizedGroup = field(repr=False)
    expected: dict = field(default_factory=dict)
    provenance: str = ""

    @property
    def name(self) -> str:
        return self.presentation.name


@dataclass(frozen=True)
class CatalogError:
    path: Path
    message: str


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    errors: list[CatalogError]
    skipped: list[Path] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def parse_metadata(text: str) -> tuple[dict, str]:
    expected, provenance = {}, ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line.startswith("#!"):
            continue
        body = line[2:].split()
        if not body:
            continue
        if body[0] == "source":
            provenance = " ".join(body[1:])
        elif body[0] == "expect":
            if len(body) != 3 or body[1] not in EXPECT_KEYS:
                raise ValueError(f"line {lineno}: malformed expectation {line!r}")
            expected[body[1]] = int(body[2])
        else:
            raise ValueError(f"line {lineno}: unknown catalog directive {body[0]!r}")
    return expected, provenance


def observed_metadata(G: RealizedGroup, keys) -> dict:
    getters = {
        "p": lambda: G.p,
        "n": lambda: G.log_order,
        "class": lambda: nilpotency_class(G),
        "rank": lambda: rank(G),
        "center": lambda: center(G).order,
        "gamma2": lambda: derived_subgroup(G).order,
    }
    return {k: getters[k]() for k in keys}


def load_entry(path) -> CatalogEntry:
    """Parse, realize and check one catalog file; raises on any problem."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    expected, provenance = parse_metadata(text)
    pres = parse_presentation(text)
    G = realize(pres)
    seen = observed_metadata(G, expected)
    bad = [f"{k}: expected {v}, got {seen[k]}" for k, v in expected.items() if seen[k] != v]
    if bad:
        raise AutzLabError(f"{pres.name}: metadata mismatch ({'; '.join(bad)})")
    return CatalogEntry(path, pres, G, expected, provenance)


def catalog_files(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"catalog directory {directory} does not exist")
    return sorted(directory.glob("*.pc"))


def load_catalog(directory=None, *, include_p5: bool = False) -> Catalog:
    """Load every ``*.pc`` file; failures are collected rather than raised."""
    directory = default_catalog_dir() if directory is None else Path(directory)
    entries, errors, skipped = [], [], []
    for path in catalog_files(directory):
        try:
            if not include_p5 and _declared_prime(path) == 5:
                skipped.append(path)
                continue
            entries.append(load_entry(path))
        except (AutzLabError, ValueError, IndexError, OSError) as exc:
            errors.append(CatalogError(path, f"{type(exc).__name__}: {exc}"))
    entries.sort(key=lambda e: e.name)
    return Catalog(entries, errors, skipped)


def _declared_prime(path: Path) -> int | None:
    for line in path.read_text(encoding="utf-8").splitlines():
        tok = line.split("#", 1)[0].split()
        if len(tok) == 2 and tok[0] == "prime" and tok[1].isdigit():
            return int(tok[1])
    return None
