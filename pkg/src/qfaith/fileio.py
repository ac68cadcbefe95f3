"""Text file formats shared by the command-line tools and the regression corpus.

Density-matrix file: optional '#'-prefixed metadata lines (``# key: value``),
one ``basis: <label>`` line, then four rows of four complex entries written
as ``[re,im]`` separated by whitespace.

Counts file: '#'-prefixed metadata lines carrying the detection model when
known (pair_rate, efficiency, dark_prob), a CSV header
``setting_a,setting_b,gates,coincidences`` and one row per setting.

Scan/result tables: '#'-prefixed config lines, a CSV header, comma-separated
rows. Floats are written with %.12g so equal runs produce identical bytes.
"""

import csv
import io

import numpy as np

from .tomography import CountRecord, TomoConfig

FLOAT_FMT = "%.12g"


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % value
    return str(value)


def _complex_token(z):
    return "[%s,%s]" % (FLOAT_FMT % z.real, FLOAT_FMT % z.imag)


def write_density_matrix(path, rho, basis="computational", metadata=None):
    rho = np.asarray(rho, dtype=complex)
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}: {_fmt(value)}")
    lines.append(f"basis: {basis}")
    for row in rho:
        lines.append(" ".join(_complex_token(z) for z in row))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def _parse_complex_token(token, lineno):
    token = token.strip()
    if not (token.startswith("[") and token.endswith("]")):
        raise ValueError(f"line {lineno}: expected [re,im] entry, got {token!r}")
    parts = token[1:-1].split(",")
    if len(parts) != 2:
        raise ValueError(f"line {lineno}: expected two components in {token!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ValueError(f"line {lineno}: non-numeric entry {token!r}") from None


def read_density_matrix(path):
    """Returns (rho, basis, metadata). Raises ValueError with line diagnostics."""
    metadata = {}
    basis = None
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, _, value = body.partition(":")
                    metadata[key.strip()] = value.strip()
                continue
            if line.startswith("basis:"):
                basis = line.partition(":")[2].strip()
                continue
            tokens = line.split()
            if len(tokens) != 4:
                raise ValueError(f"line {lineno}: expected 4 entries, got {len(tokens)}")
            rows.append([_parse_complex_token(tok, lineno) for tok in tokens])
    if basis is None:
        raise ValueError("missing 'basis:' line")
    if len(rows) != 4:
        raise ValueError(f"expected 4 matrix rows, got {len(rows)}")
    return np.array(rows, dtype=complex), basis, metadata


def write_counts(path, records, config=None, extra_metadata=None):
    lines = []
    if config is not None:
        lines.append(f"# pair_rate: {FLOAT_FMT % config.pair_rate}")
        lines.append(f"# efficiency: {FLOAT_FMT % config.efficiency}")
        lines.append(f"# dark_prob: {FLOAT_FMT % config.dark_prob}")
    for key, value in (extra_metadata or {}).items():
        lines.append(f"# {key}: {_fmt(value)}")
    lines.append("setting_a,setting_b,gates,coincidences")
    for rec in records:
        lines.append(f"{rec.a},{rec.b},{rec.gates},{rec.coincidences}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_counts(path):
    """Returns (records, metadata). Metadata keys are raw strings.

    The detection model, when all three of pair_rate/efficiency/dark_prob are
    present, is available via :func:`config_from_metadata`.
    """
    metadata = {}
    records = []
    with open(path) as fh:
        header_seen = False
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, _, value = body.partition(":")
                    metadata[key.strip()] = value.strip()
                continue
            if not header_seen:
                if line != "setting_a,setting_b,gates,coincidences":
                    raise ValueError(f"line {lineno}: unexpected header {line!r}")
                header_seen = True
                continue
            fields = line.split(",")
            if len(fields) != 4:
                raise ValueError(f"line {lineno}: expected 4 fields, got {len(fields)}")
            a, b, gates_s, k_s = (f.strip() for f in fields)
            try:
                gates = int(gates_s)
                k = int(k_s)
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer count fields {line!r}") from None
            try:
                records.append(CountRecord(a=a, b=b, gates=gates, coincidences=k))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    if not header_seen:
        raise ValueError("missing counts header line")
    return records, metadata


def config_from_metadata(metadata, gates, seed=0):
    """TomoConfig from counts-file metadata, or None when the model is absent."""
    keys = ("pair_rate", "efficiency", "dark_prob")
    if not all(key in metadata for key in keys):
        return None
    return TomoConfig(
        pair_rate=float(metadata["pair_rate"]),
        efficiency=float(metadata["efficiency"]),
        dark_prob=float(metadata["dark_prob"]),
        gates=int(gates),
        seed=seed,
    )


def format_table(columns, rows, config=None):
    """Render a table to a string: '#' config lines, CSV header, data rows."""
    buf = io.StringIO()
    for key, value in (config or {}).items():
        buf.write(f"# {key}: {_fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_table(path, columns, rows, config=None):
    with open(path, "w") as fh:
        fh.write(format_table(columns, rows, config=config))
