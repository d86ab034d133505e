"""Command-line front end: ``succession {eval,sunrise,corpus,analyze,oracle}``.

Exit status is 0 on success, 1 on data errors or failed checks and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import IO

from . import analysis, corpus, oracle
from .codec import CodelengthReport, emit_curve, evaluate_stream, synthesize_sunrise
from .laws import LAPLACE, NATURAL, TABLE_LAWS, parse_laws

SUNRISE_DAYS = 1_906_605
TABLE_SPELLING = ",".join(law.name for law in TABLE_LAWS)
REPORT_FIELDS = ("law", "n", "q", "bits", "bytes_ceil", "entropy_bits",
                 "entropy_bytes_ceil", "score_bytes")


class DataError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _bits(value: float) -> str:
    return f"{value:.3f}"


def _report_cells(r: CodelengthReport) -> dict:
    d = r.to_dict()
    d["bits"] = _bits(r.bits)
    d["entropy_bits"] = _bits(r.entropy_bits)
    return d


def _json_value(text_or_value):
    if isinstance(text_or_value, str):
        try:
            return int(text_or_value)
        except ValueError:
            try:
                return float(text_or_value)
            except ValueError:
                return text_or_value
    return text_or_value


def write_table(rows: Sequence[dict], fields: Sequence[str], fmt: str, out: IO[str]) -> None:
    """Render dict rows as TSV (header + rows) or JSON lines with the same values."""
    if fmt == "json":
        for row in rows:
            obj = {f: _json_value(row[f]) for f in fields}
            out.write(json.dumps(obj, sort_keys=False) + "\n")
        return
    out.write("\t".join(fields) + "\n")
    for row in rows:
        out.write("\t".join(_fmt(row[f]) for f in fields) + "\n")


def emit_plotdata(series: Sequence[Sequence], header: str | Sequence[str],
                  path: str | Path | IO[str] | None = None,
                  formats: Sequence[str] | None = None) -> None:
    """Write ``#``-prefixed header lines then whitespace-separated numeric columns."""
    if series:
        width = len(series[0])
        if any(len(row) != width for row in series):
            raise ValueError("all rows must have the same number of columns")
    lines = header.splitlines() if isinstance(header, str) else list(header)
    text = [f"# {line}" for line in lines]
    for row in series:
        cells = []
        for j, v in enumerate(row):
            if formats and j < len(formats) and formats[j]:
                cells.append(format(v, formats[j]))
            else:
                cells.append(_fmt(v))
        text.append(" ".join(cells))
    payload = "\n".join(text) + "\n"
    if path is None:
        sys.stdout.write(payload)
    elif hasattr(path, "write"):
        path.write(payload)
    else:
        Path(path).write_text(payload, encoding="utf-8")


def _laws_arg(text: str):
    try:
        laws = parse_laws(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return laws


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _curve_rows(stream, laws, k, stride, relative=False):
    curves = [emit_curve(stream, law, k, stride, relative) for law in laws]
    if not curves or not curves[0]:
        return []
    return [(t, *(c[j][1] for c in curves)) for j, (t, _) in enumerate(curves[0])]


def _open_out(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8")
    return contextlib.nullcontext(sys.stdout)


def _emit_reports(args, rows, fields, out):
    write_table(rows, fields, "json" if args.format == "json" else "tsv", out)


# --- subcommands --------------------------------------------------------------

def cmd_eval(args) -> int:
    files = list(args.files or []) + list(args.file or [])
    if not files:
        raise DataError("no input files given")
    rows, curves = [], []
    for name in files:
        try:
            data = Path(name).read_bytes()
        except OSError as exc:
            raise DataError(f"{name}: {exc.strerror or exc}") from None
        if args.format == "plotdata":
            curves.append((name, _curve_rows(data, args.laws, args.alphabet_size,
                                             args.stride, args.relative)))
            continue
        for law in args.laws:
            r = evaluate_stream(data, law, args.alphabet_size)
            rows.append({"file": name, **_report_cells(r)})
    with _open_out(args) as out:
        if args.format == "plotdata":
            for name, series in curves:
                header = [f"file {name}", "t " + " ".join(l.name for l in args.laws)]
                emit_plotdata(series, header, out, ["d"] + [".3f"] * len(args.laws))
        else:
            _emit_reports(args, rows, ("file",) + REPORT_FIELDS, out)
    return 0


def cmd_sunrise(args) -> int:
    stream = synthesize_sunrise(args.days)
    with _open_out(args) as out:
        if args.format == "plotdata":
            series = _curve_rows(stream, args.laws, args.alphabet_size, args.stride)
            header = [f"sunrise, {args.days} days, k={args.alphabet_size}",
                      "cumulative codelength in bits",
                      "t " + " ".join(l.name for l in args.laws)]
            emit_plotdata(series, header, out, ["d"] + [".3f"] * len(args.laws))
        else:
            rows = [_report_cells(evaluate_stream(stream, law, args.alphabet_size))
                    for law in args.laws]
            _emit_reports(args, rows, REPORT_FIELDS, out)
    return 0


def cmd_corpus(args) -> int:
    directory = corpus.corpus_dir(args.dir)
    if directory is None:
        raise DataError(f"no corpus directory: pass --dir or set {corpus.CORPUS_ENV}")
    try:
        manifest = (corpus.load_manifest(args.manifest) if args.manifest
                    else corpus.default_manifest())
    except (OSError, corpus.ManifestError) as exc:
        raise DataError(f"manifest: {exc}") from None
    if args.fetch:
        try:
            report = corpus.fetch_corpus(args.fetch, directory, manifest)
        except corpus.CorpusError as exc:
            raise DataError(str(exc)) from None
        print(report.summary(), file=sys.stderr)
        for name, err in report.errors.items():
            print(f"fetch {name}: {err}", file=sys.stderr)
    if args.write_manifest:
        pinned = corpus.pin_manifest(manifest, directory)
        Path(args.write_manifest).write_text(corpus.format_manifest(pinned), encoding="utf-8")
    if not directory.is_dir():
        raise DataError(f"corpus directory {directory} does not exist")
    run = corpus.run_corpus(manifest, directory, args.laws, args.alphabet_size,
                            args.tolerance, args.workers)
    expected = {e.name: e for e in manifest}
    rows = []
    for f in run.files:
        for r in f.reports:
            want = expected[f.name].expected_scores.get(r.law)
            rows.append({"file": f.name, **_report_cells(r),
                         "expected": "-" if want is None else want})
    totals = run.totals()
    want_totals = manifest.expected_totals() if not run.skipped else {}
    for law in run.laws:
        rows.append({"file": "total", "law": law, "n": sum(f.size for f in run.files),
                     "q": "-", "bits": "-", "bytes_ceil": "-", "entropy_bits": "-",
                     "entropy_bytes_ceil": "-", "score_bytes": totals[law],
                     "expected": want_totals.get(law, "-")})
    with _open_out(args) as out:
        _emit_reports(args, rows, ("file",) + REPORT_FIELDS + ("expected",), out)
    for v in run.skipped:
        print(f"skipped {v.name}: {v.status.value} {v.detail}".rstrip(), file=sys.stderr)
    for m in run.mismatches:
        print(f"mismatch {m}", file=sys.stderr)
    return 0 if run.ok else 1


def cmd_analyze(args) -> int:
    laws = args.laws
    try:
        # a vector with q attested symbols needs at least q observations
        n_min = args.n_min if args.what == "possible-set" else max(args.n_min, args.q)
        ns = analysis.n_grid(n_min, max(args.n_max, n_min), args.points, log=not args.linear)
        if args.what == "escape":
            series = analysis.escape_curve(laws, args.alphabet_size, args.q, ns, args.shape)
            cols = ["n"] + [l.name for l in laws]
            formats = ["d"] + [".12g"] * len(laws)
            title = f"escape mass, k={args.alphabet_size}, q={args.q}"
        elif args.what == "ratio":
            if len(laws) != 2:
                raise DataError("ratio needs exactly two laws, e.g. --laws natural,laplace")
            series = analysis.ratio_curve(laws[0], laws[1], args.alphabet_size, args.q,
                                          ns, args.shape)
            cols = ["n", f"log2({laws[0].name}/{laws[1].name})"]
            formats = ["d", ".3f"]
            title = f"log ratio in bits, k={args.alphabet_size}, q={args.q}"
        else:
            series = analysis.possible_set_curve(laws, args.alphabet_size, args.b, ns)
            cols = ["n"] + [l.name for l in laws]
            formats = ["d"] + [".3f"] * len(laws)
            title = f"log2 p(B^n), k={args.alphabet_size}, b={args.b}"
    except ValueError as exc:
        raise DataError(str(exc)) from None
    with _open_out(args) as out:
        if args.format == "plotdata":
            emit_plotdata(series, [title, " ".join(cols)], out, formats)
        else:
            rows = [{c: format(v, f) for c, v, f in zip(cols, row, formats)} for row in series]
            write_table(rows, cols, args.format, out)
    return 0


def cmd_oracle(args) -> int:
    results = [
        oracle.check_normalization(args.max_k, args.max_n, random_cases=args.random),
        oracle.check_oracle_equivalence(args.max_k, args.max_n, exact=args.exact),
        oracle.check_telescoping(args.strings),
        oracle.check_totality(min(args.max_k, 4), min(args.max_n, 8)),
    ]
    for r in results:
        print(r.line())
        for f in r.failures[:5]:
            print(f"  {f}")
    return 0 if all(r.passed for r in results) else 1


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="succession",
                                description="Laws of succession: estimation and codelengths.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_laws, formats=("tsv", "json", "plotdata")):
        sp.add_argument("--laws", "--law", dest="laws", type=_laws_arg,
                        default=parse_laws(default_laws),
                        help=f"comma-separated laws (default: {default_laws})")
        sp.add_argument("-k", "--alphabet-size", type=_positive, default=256)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    sp = sub.add_parser("eval", help="codelength of files under each law")
    sp.add_argument("files", nargs="*")
    sp.add_argument("--file", action="append", help="input file (repeatable)")
    sp.add_argument("--stride", type=_positive, default=1)
    sp.add_argument("--relative", action="store_true",
                    help="plotdata: subtract the empirical entropy of each prefix")
    common(sp, NATURAL.name)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("sunrise", help="the all-'1' sunrise stream")
    sp.add_argument("--days", type=_positive, default=SUNRISE_DAYS)
    sp.add_argument("--stride", type=_positive, default=1)
    common(sp, TABLE_SPELLING)
    sp.set_defaults(func=cmd_sunrise)

    sp = sub.add_parser("corpus", help="score a benchmark corpus against its manifest")
    sp.add_argument("--dir", help=f"corpus directory (default: ${corpus.CORPUS_ENV})")
    sp.add_argument("--manifest", help="manifest TSV (default: bundled Calgary manifest)")
    sp.add_argument("--tolerance", type=int, default=2, help="allowed score error in bytes")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--fetch", metavar="URL", help="download missing files from URL first")
    sp.add_argument("--write-manifest", metavar="PATH",
                    help="write the manifest with digests of the files present")
    common(sp, TABLE_SPELLING, formats=("tsv", "json"))
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("analyze", help="escape, ratio and possible-set curves over n")
    sp.add_argument("--what", choices=("escape", "ratio", "possible-set"), default="escape")
    sp.add_argument("-q", type=_positive, default=1, help="attested symbols")
    sp.add_argument("-b", type=_positive, default=1, help="sub-alphabet size")
    sp.add_argument("--n-min", type=_positive, default=1)
    sp.add_argument("--n-max", type=_positive, default=1000)
    sp.add_argument("--points", type=_positive, default=50)
    sp.add_argument("--linear", action="store_true", help="linear instead of log n grid")
    sp.add_argument("--shape", choices=tuple(analysis.SHAPES), default="balanced")
    common(sp, f"{NATURAL.name},{LAPLACE.name}", formats=("plotdata", "tsv", "json"))
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("oracle", help="run the brute-force consistency suites")
    sp.add_argument("--max-k", type=_positive, default=6)
    sp.add_argument("--max-n", type=_positive, default=10)
    sp.add_argument("--strings", type=_positive, default=500)
    sp.add_argument("--random", type=int, default=1000,
                    help="extra random vectors for the normalization suite")
    sp.add_argument("--exact", action="store_true", help="rational arithmetic for the oracle")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
