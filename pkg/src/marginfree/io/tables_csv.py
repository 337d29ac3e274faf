"""CSV ingestion, bundled datasets and result files."""
import csv
import io
import os

import numpy as np

from ..errors import ParseError, TableError, UnknownDataset
from ..tables import CountTable

GOODMAN_1991 = [[4, 10, 1], [10, 50, 10], [1, 10, 4]]

DATASETS = {
    "goodman1991": lambda: CountTable(GOODMAN_1991),
}


def builtin_dataset(name):
    try:
        return DATASETS[name]()
    except KeyError:
        raise UnknownDataset(
            f"unknown dataset {name!r}; available: {', '.join(sorted(DATASETS))}"
        ) from None


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_csv(text, source="<string>"):
    """Parse a labelled table: header row of column labels, first column of row labels.

    Headerless input (all cells numeric) gets ``R1..``/``C1..`` labels.  A
    header one cell shorter than the body (as written by R without row
    names heading) is accepted.
    """
    rows = [
        (lineno, row)
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1)
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise ParseError(f"{source}: empty file")
    rows = [(n, [cell.strip() for cell in row]) for n, row in rows]

    first_line, first = rows[0]
    has_header = not all(_is_number(cell) for cell in first)
    header = first if has_header else None
    body = rows[1:] if has_header else rows
    if not body:
        raise ParseError(f"{source}: no data rows", line=first_line)

    width = len(body[0][1])
    if header is not None and len(header) == width - 1:
        header = [""] + header
    if header is not None and len(header) != width:
        raise ParseError(
            f"{source}: header has {len(header)} cells but data rows have {width}",
            line=first_line,
        )
    if header is not None:
        has_row_labels = header[0] == "" or not all(_is_number(r[0]) for _, r in body)
    else:
        has_row_labels = not all(_is_number(r[0]) for _, r in body)

    offset = 1 if has_row_labels else 0
    row_labels, values = [], []
    for lineno, row in body:
        if len(row) != width:
            raise ParseError(
                f"{source}: expected {width} cells, found {len(row)}", line=lineno
            )
        parsed = []
        for col, cell in enumerate(row[offset:], start=offset + 1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{source}: cannot parse {cell!r} as a number", line=lineno, column=col
                ) from None
        values.append(parsed)
        if has_row_labels:
            row_labels.append(row[0])

    col_labels = header[offset:] if header is not None else None
    try:
        return CountTable(
            np.array(values),
            row_labels if has_row_labels else None,
            col_labels,
        )
    except TableError as exc:
        raise TableError(f"{source}: {exc}") from None


def load_csv(path):
    path = os.fspath(path)
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    return parse_csv(text, source=path)


def format_number(value, zero_tol=1e-12):
    """Six significant digits; round-off below ``zero_tol`` is printed as 0."""
    if abs(value) < zero_tol:
        return "0"
    text = f"{value:.6g}"
    return "0" if text in ("-0", "0") else text


def _format_count(value):
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def write_csv_table(t, path):
    """Write a count table so that :func:`load_csv` reads it back unchanged."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + list(t.col_labels))
        for label, row in zip(t.row_labels, t.values):
            writer.writerow([label] + [_format_count(v) for v in row])


def _write_coords(path, labels, coords):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["label"] + [f"f{a + 1}" for a in range(coords.shape[1])])
        for label, row in zip(labels, coords):
            writer.writerow([label] + [format_number(v) for v in row])


def write_outputs(result, out_dir, svg=False, plot_axes=(1, 2)):
    """Write coordinates, dispersion and optionally an SVG map for one method.

    Returns the list of paths written.
    """
    from .svg import render_biplot

    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.join(out_dir, result.method)
    paths = []
    try:
        path = f"{stem}_rows.csv"
        _write_coords(path, result.row_labels, result.row_coords)
        paths.append(path)
        path = f"{stem}_cols.csv"
        _write_coords(path, result.col_labels, result.col_coords)
        paths.append(path)
        path = f"{stem}_dispersion.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["axis", "delta"])
            for a, d in enumerate(result.dispersion, start=1):
                writer.writerow([a, format_number(d)])
        paths.append(path)
        if svg:
            path = f"{stem}_map.svg"
            document = render_biplot(result, plot_axes)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(document)
            paths.append(path)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}", path) from exc
    return paths
