"""
Rendering of report rows as CSV, JSON or a text table.

Rationals print as exact `p/q` strings so every pass/fail decision can be
recomputed offline. No timestamps: equal inputs give byte-identical output.
"""
import csv
import io
import json
from fractions import Fraction

import mpmath


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 20)
    return str(value)


def to_json_value(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {key: to_json_value(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    return format_value(value)


def header_lines(meta):
    return [f"# {key}={format_value(value)}" for key, value in meta.items()]


def render(rows, fields, output_format, meta=None):
    """
    rows: list of dicts; fields: column order; meta: ordered header values (seed, verb, ...)
    """
    meta = meta or {}
    if output_format == 'json':
        payload = {
            'meta': to_json_value(meta),
            'rows': [{name: to_json_value(row.get(name)) for name in fields} for row in rows],
        }
        return json.dumps(payload, indent=2) + '\n'
    if output_format == 'csv':
        buffer = io.StringIO()
        for line in header_lines(meta):
            buffer.write(line + '\n')
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(fields)
        for row in rows:
            writer.writerow([format_value(row.get(name)) for name in fields])
        return buffer.getvalue()
    table = [[format_value(row.get(name)) for name in fields] for row in rows]
    widths = [max([len(name)] + [len(line[i]) for line in table]) for i, name in enumerate(fields)]
    lines = header_lines(meta)
    lines.append('  '.join(name.ljust(width) for name, width in zip(fields, widths)).rstrip())
    for line in table:
        lines.append('  '.join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
    return '\n'.join(lines) + '\n'


def render_document(document, output_format, meta=None):
    """
    Single structured result (decompositions): JSON object, or key=value lines otherwise
    """
    meta = meta or {}
    if output_format == 'json':
        return json.dumps({'meta': to_json_value(meta), 'result': to_json_value(document)},
                          indent=2) + '\n'
    lines = header_lines(meta)

    def walk(prefix, value):
        if isinstance(value, dict):
            for key, inner in value.items():
                walk(f"{prefix}{key}.", inner)
        else:
            lines.append(f"{prefix[:-1]}={format_value(to_json_value(value))}")

    walk('', document)
    return '\n'.join(lines) + '\n'
