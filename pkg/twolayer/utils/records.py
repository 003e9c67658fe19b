# twolayer/utils/records.py
import json

import click

JSON_FLAG = "twolayer.json"


def _value(text: str):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            continue
    return text


def parse_record(line: str) -> dict:
    """
    Split a ``key=value`` record into a dict. Numbers become ints or floats; words without ``=``
    are joined under ``status``, and a parenthesised ``(key=value)`` counts as a pair.
    """
    fields, words = {}, []
    for token in line.split():
        if token.startswith("(") and token.endswith(")"):
            token = token[1:-1]
        key, sep, value = token.partition("=")
        if sep and key:
            fields[key] = _value(value)
        else:
            words.append(token)
    if words:
        fields["status"] = " ".join(words)
    return fields


def emit_record(line: str):
    """Echo one record, as a JSON object when the root ``--json`` flag is set."""
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.meta.get(JSON_FLAG):
        click.echo(json.dumps(parse_record(line)))
    else:
        click.echo(line)
