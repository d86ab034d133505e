"""Benchmark corpora: manifests, integrity checks and per-law scoring.

A manifest is a UTF-8 TSV file, one file per line::

    name  size  sha256  [q]  [natural subsets laplace jp a b c d]  [entropy_bytes]

Lines starting with ``#`` are comments. A digest of ``-`` leaves the file
unpinned (size-only check), and a ``-`` or ``?`` in an expectation column
means "no expectation".
"""

from __future__ import annotations

import enum
import hashlib
import os
import shutil
import tempfile
import urllib.error
import urllib.request
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .codec import CodelengthReport, evaluate_stream
from .laws import TABLE_LAWS, SuccessionLaw

CORPUS_ENV = "SUCCESSION_CORPUS_DIR"
SCORE_COLUMNS = tuple(law.name for law in TABLE_LAWS)
_HEX = set("0123456789abcdef")


class ManifestError(ValueError):
    pass


class CorpusError(RuntimeError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    size_bytes: int
    digest: str | None = None
    expected_q: int | None = None
    expected_scores: dict[str, int] = field(default_factory=dict)
    expected_entropy_bytes: int | None = None


@dataclass
class CorpusManifest:
    entries: list[ManifestEntry] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.name in seen:
                raise ManifestError(f"duplicate name {e.name!r}")
            seen.add(e.name)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def total_size(self) -> int:
        return sum(e.size_bytes for e in self.entries)

    def expected_totals(self) -> dict[str, int]:
        """Column sums of the expected scores, for columns filled in on every row."""
        out = {}
        for col in SCORE_COLUMNS:
            vals = [e.expected_scores.get(col) for e in self.entries]
            if vals and all(v is not None for v in vals):
                out[col] = sum(vals)
        return out


def _optional_int(cell: str, lineno: int, what: str) -> int | None:
    if cell in ("-", "?", ""):
        return None
    try:
        return int(cell)
    except ValueError:
        raise ManifestError(f"line {lineno}: bad {what} {cell!r}") from None


def parse_manifest(text: str) -> CorpusManifest:
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in line.split("\t")]
        if len(cells) < 3 or len(cells) > 4 + len(SCORE_COLUMNS) + 1:
            raise ManifestError(f"line {lineno}: expected 3 to 13 tab-separated columns, "
                                f"got {len(cells)}")
        name, size, digest = cells[:3]
        if not name:
            raise ManifestError(f"line {lineno}: empty name")
        if name in seen:
            raise ManifestError(f"line {lineno}: duplicate name {name!r}")
        seen.add(name)
        try:
            size_bytes = int(size)
        except ValueError:
            raise ManifestError(f"line {lineno}: bad size {size!r}") from None
        if size_bytes <= 0:
            raise ManifestError(f"line {lineno}: size must be positive")
        digest = digest.lower()
        if digest == "-":
            digest = None
        elif len(digest) != 64 or not set(digest) <= _HEX:
            raise ManifestError(f"line {lineno}: digest must be 64 hex characters")
        rest = cells[3:]
        expected_q = _optional_int(rest[0], lineno, "q") if rest else None
        scores = {}
        for col, cell in zip(SCORE_COLUMNS, rest[1:1 + len(SCORE_COLUMNS)]):
            value = _optional_int(cell, lineno, f"{col} score")
            if value is not None:
                scores[col] = value
        entropy = None
        if len(rest) == 2 + len(SCORE_COLUMNS):
            entropy = _optional_int(rest[-1], lineno, "entropy bytes")
        entries.append(ManifestEntry(name, size_bytes, digest, expected_q, scores, entropy))
    return CorpusManifest(entries)


def load_manifest(path: str | os.PathLike) -> CorpusManifest:
    return parse_manifest(Path(path).read_text(encoding="utf-8"))


def default_manifest() -> CorpusManifest:
    """The bundled Calgary manifest with the published order-0 scores."""
    text = resources.files("succession").joinpath("data/calgary.tsv").read_text("utf-8")
    return parse_manifest(text)


def format_manifest(manifest: CorpusManifest) -> str:
    lines = ["# name\tsize\tsha256\tq\t" + "\t".join(SCORE_COLUMNS) + "\tentropy_bytes"]
    for e in manifest:
        cells = [e.name, str(e.size_bytes), e.digest or "-",
                 "-" if e.expected_q is None else str(e.expected_q)]
        cells += [str(e.expected_scores[c]) if c in e.expected_scores else "-"
                  for c in SCORE_COLUMNS]
        cells.append("-" if e.expected_entropy_bytes is None else str(e.expected_entropy_bytes))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def corpus_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    """Explicit directory, else ``$SUCCESSION_CORPUS_DIR``, else ``None``."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else None


# --- verification -------------------------------------------------------------

class Status(enum.Enum):
    OK = "ok"
    MISSING = "missing"
    SIZE_MISMATCH = "size-mismatch"
    DIGEST_MISMATCH = "digest-mismatch"
    UNREADABLE = "unreadable"


@dataclass(frozen=True)
class Verification:
    name: str
    status: Status
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is Status.OK


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def verify_file(entry: ManifestEntry, directory: str | os.PathLike) -> Verification:
    path = Path(directory) / entry.name
    try:
        if not path.is_file():
            return Verification(entry.name, Status.MISSING, str(path))
        size = path.stat().st_size
        if size != entry.size_bytes:
            return Verification(entry.name, Status.SIZE_MISMATCH,
                                f"expected {entry.size_bytes} bytes, found {size}")
        if entry.digest is not None:
            digest = sha256_file(path)
            if digest != entry.digest:
                return Verification(entry.name, Status.DIGEST_MISMATCH,
                                    f"expected {entry.digest}, found {digest}")
    except OSError as exc:
        return Verification(entry.name, Status.UNREADABLE, str(exc))
    return Verification(entry.name, Status.OK)


# --- scoring ------------------------------------------------------------------

@dataclass
class FileResult:
    name: str
    size: int
    q: int
    reports: list[CodelengthReport]


@dataclass
class CorpusRun:
    laws: list[str]
    files: list[FileResult] = field(default_factory=list)
    skipped: list[Verification] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    def totals(self) -> dict[str, int]:
        out = {law: 0 for law in self.laws}
        for f in self.files:
            for r in f.reports:
                out[r.law] += r.score_bytes
        return out

    @property
    def ok(self) -> bool:
        return not self.skipped and not self.mismatches


def _score_file(args) -> FileResult:
    path, name, laws, k = args
    data = Path(path).read_bytes()
    reports = [evaluate_stream(data, law, k) for law in laws]
    q = reports[0].q if reports else len(set(data))
    return FileResult(name, len(data), q, reports)


def _compare(entry: ManifestEntry, result: FileResult, tolerance: int) -> list[str]:
    problems = []
    if entry.expected_q is not None and entry.expected_q != result.q:
        problems.append(f"{entry.name}: q={result.q}, expected {entry.expected_q}")
    for r in result.reports:
        want = entry.expected_scores.get(r.law)
        if want is not None and abs(r.score_bytes - want) > tolerance:
            problems.append(f"{entry.name}: {r.law} score {r.score_bytes}, "
                            f"expected {want} +/- {tolerance}")
    if result.reports and entry.expected_entropy_bytes is not None:
        got = result.reports[0].entropy_bytes_ceil
        if abs(got - entry.expected_entropy_bytes) > 1:
            problems.append(f"{entry.name}: entropy {got} bytes, "
                            f"expected {entry.expected_entropy_bytes}")
    return problems


def run_corpus(manifest: CorpusManifest, directory: str | os.PathLike,
               laws: Sequence[SuccessionLaw] = TABLE_LAWS, k: int = 256,
               tolerance: int = 2, workers: int = 1) -> CorpusRun:
    """Score every verified file under every law.

    Files that fail verification are skipped and listed in ``skipped``;
    scores outside ``tolerance`` bytes of the manifest land in ``mismatches``.
    Output is ordered by file name whatever the number of workers.
    """
    laws = list(laws)
    run = CorpusRun([law.name for law in laws])
    if not laws:
        return run
    entries = sorted(manifest, key=lambda e: e.name)
    todo = []
    for e in entries:
        v = verify_file(e, directory)
        if v.ok:
            todo.append(e)
        else:
            run.skipped.append(v)
    jobs = [(Path(directory) / e.name, e.name, laws, k) for e in todo]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_score_file, jobs))
    else:
        results = [_score_file(j) for j in jobs]
    for e, res in zip(todo, results):
        run.files.append(res)
        run.mismatches.extend(_compare(e, res, tolerance))
    return run


def pin_manifest(manifest: CorpusManifest, directory: str | os.PathLike) -> CorpusManifest:
    """Copy of ``manifest`` with digests filled in from the files present."""
    entries = []
    for e in manifest:
        path = Path(directory) / e.name
        digest = e.digest
        if path.is_file() and path.stat().st_size == e.size_bytes:
            digest = sha256_file(path)
        entries.append(ManifestEntry(e.name, e.size_bytes, digest, e.expected_q,
                                     dict(e.expected_scores), e.expected_entropy_bytes))
    return CorpusManifest(entries)


# --- fetching -----------------------------------------------------------------

@dataclass
class FetchReport:
    fetched: list[str] = field(default_factory=list)
    errors: dict[str, str] = field(default_factory=dict)

    def summary(self) -> str:
        return f"{len(self.fetched)} fetched, {len(self.errors)} failed"


def fetch_corpus(base_url: str, directory: str | os.PathLike,
                 manifest: CorpusManifest, timeout: float = 60.0) -> FetchReport:
    """Download every file that is missing or fails verification.

    Per-file network errors are collected in the report. A file that still
    fails verification after download raises :class:`CorpusError`.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    report = FetchReport()
    base = base_url if base_url.endswith("/") else base_url + "/"
    for e in manifest:
        if verify_file(e, directory).ok:
            continue
        url = base + e.name
        tmp_name = None
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp, \
                    tempfile.NamedTemporaryFile(dir=directory, delete=False) as tmp:
                tmp_name = tmp.name
                shutil.copyfileobj(resp, tmp)
        except (urllib.error.URLError, OSError) as exc:
            if tmp_name:
                Path(tmp_name).unlink(missing_ok=True)
            report.errors[e.name] = str(exc)
            continue
        os.replace(tmp_name, directory / e.name)
        v = verify_file(e, directory)
        if not v.ok:
            raise CorpusError(f"{e.name}: {v.status.value} after download ({v.detail})")
        report.fetched.append(e.name)
    return report
