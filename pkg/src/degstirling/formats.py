"""Canonical polynomial strings and the JSON/CSV export formats.

Grammar (ascending powers, exact fractions, ``L`` for lambda)::

    lambda-poly  :=  "0" | term ((" + " | " - ") term)*
    term         :=  ["-"] (rational | [rational] "L" ["^" int])
    x-poly       :=  "0" | xterm ((" + " | " - ") xterm)*
    xterm        :=  ["-"] (rational | "(" lambda-poly ")") ["x" ["^" int]]
                  |  ["-"] [rational] "x" ["^" int]

A coefficient that is a plain rational is written bare; a coefficient that
depends on ``L`` is parenthesised.  ``parse_*(format_*(p)) == p`` holds for
every canonical polynomial.
"""

import csv
import io
import json
import re
from fractions import Fraction

from .core import LambdaPoly, XPoly

__all__ = [
    "format_lambda_poly",
    "format_x_poly",
    "format_value",
    "parse_lambda_poly",
    "parse_x_poly",
    "triangle_to_json",
    "triangle_from_json",
    "triangle_to_csv",
    "triangle_from_csv",
    "family_to_json",
    "family_from_json",
    "family_to_csv",
    "family_from_csv",
]

_RATIONAL = r"\d+(?:/\d+)?"
_LTERM = re.compile(rf"^({_RATIONAL})?(?:(L)(?:\^(\d+))?)?$")
_XTERM = re.compile(rf"^(?:({_RATIONAL})|\((.+)\))?(?:(x)(?:\^(\d+))?)?$")


def _monomial(mag, var, i):
    if i == 0:
        return str(mag)
    head = "" if mag == 1 else str(mag)
    return head + var + (f"^{i}" if i > 1 else "")


def _join(pieces):
    # pieces: (negative, body)
    if not pieces:
        return "0"
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_lambda_poly(p):
    pieces = []
    for i, c in enumerate(p.coeffs):
        if c:
            pieces.append((c < 0, _monomial(abs(c), "L", i)))
    return _join(pieces)


def format_x_poly(p):
    pieces = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        if c.is_constant():
            v = c.constant()
            pieces.append((v < 0, _monomial(abs(v), "x", i)))
        else:
            tail = "" if i == 0 else "x" + (f"^{i}" if i > 1 else "")
            pieces.append((False, f"({format_lambda_poly(c)}){tail}"))
    return _join(pieces)


def format_value(v):
    """String for a LambdaPoly, XPoly or rational value."""
    if isinstance(v, XPoly):
        return format_x_poly(v)
    if isinstance(v, LambdaPoly):
        return format_lambda_poly(v)
    return str(Fraction(v))


def _split_terms(text):
    """Split at top-level `` + `` / `` - `` separators; yields (sign, term)."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial string")
    terms = []
    depth = 0
    start = 0
    sign = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith((" + ", " - "), i):
            terms.append((sign, text[start:i]))
            sign = -1 if text[i + 1] == "-" else 1
            i += 3
            start = i
            continue
        i += 1
    terms.append((sign, text[start:]))
    out = []
    for sign, term in terms:
        if term.startswith("-"):
            sign, term = -sign, term[1:]
        if not term:
            raise ValueError(f"malformed polynomial string {text!r}")
        out.append((sign, term))
    return out


def parse_lambda_poly(text):
    coeffs = {}
    for sign, term in _split_terms(text):
        m = _LTERM.match(term)
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"malformed term {term!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        i = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[i] = coeffs.get(i, 0) + sign * c
    n = max(coeffs) + 1
    return LambdaPoly([coeffs.get(i, 0) for i in range(n)])


def parse_x_poly(text):
    coeffs = {}
    for sign, term in _split_terms(text):
        m = _XTERM.match(term)
        if not m or not (m.group(1) or m.group(2) or m.group(3)):
            raise ValueError(f"malformed term {term!r}")
        if m.group(2) is not None:
            c = parse_lambda_poly(m.group(2))
        else:
            c = LambdaPoly.coerce(Fraction(m.group(1)) if m.group(1) else Fraction(1))
        i = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[i] = coeffs.get(i, LambdaPoly()) + c * sign
    n = max(coeffs) + 1
    return XPoly([coeffs.get(i, 0) for i in range(n)])


# -- triangles ----------------------------------------------------------


def triangle_to_json(tri):
    doc = {
        "kind": tri.kind.value,
        "r": tri.r,
        "n_max": tri.n_max,
        "provenance": tri.provenance.value,
        "entries": [[format_lambda_poly(e) for e in row] for row in tri.entries],
    }
    return json.dumps(doc, indent=2) + "\n"


def triangle_from_json(text):
    from .stirling import Kind, Provenance, StirlingTriangle

    doc = json.loads(text)
    entries = tuple(tuple(parse_lambda_poly(s) for s in row) for row in doc["entries"])
    return StirlingTriangle(
        Kind(doc["kind"]),
        doc["r"],
        doc["n_max"],
        entries,
        Provenance(doc.get("provenance", Provenance.BASIS.value)),
    )


def _cell(p):
    # constant entries (e.g. after lambda evaluation) are written bare
    return str(p.constant()) if p.is_constant() else format_lambda_poly(p)


def triangle_to_csv(tri):
    buf = io.StringIO()
    buf.write(f"# kind={tri.kind.value}\n# r={tri.r}\n# n_max={tri.n_max}\n")
    buf.write(f"# provenance={tri.provenance.value}\n")
    buf.write("n,k,value\n")
    for n, row in enumerate(tri.entries):
        for k, e in enumerate(row):
            if e.is_constant():
                buf.write(f"{n},{k},{_cell(e)}\n")
            else:
                buf.write(f'{n},{k},"{_cell(e)}"\n')
    return buf.getvalue()


def _read_csv(text):
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    return meta, rows[0], rows[1:]


def triangle_from_csv(text):
    from .stirling import Kind, Provenance, StirlingTriangle

    meta, header, rows = _read_csv(text)
    if header != ["n", "k", "value"]:
        raise ValueError(f"unexpected CSV header {header!r}")
    n_max = int(meta["n_max"])
    grid = [[None] * (n + 1) for n in range(n_max + 1)]
    for n, k, value in rows:
        grid[int(n)][int(k)] = parse_lambda_poly(value)
    if any(e is None for row in grid for e in row):
        raise ValueError("CSV triangle is missing entries")
    return StirlingTriangle(
        Kind(meta["kind"]),
        int(meta["r"]),
        n_max,
        tuple(tuple(row) for row in grid),
        Provenance(meta.get("provenance", Provenance.BASIS.value)),
    )


# -- families -----------------------------------------------------------


def _family_meta(fam):
    meta = {"family": fam.family, "n_max": fam.n_max, "ring": fam.ring}
    for key in ("p", "r"):
        if fam.params.get(key) is not None:
            meta[key] = fam.params[key]
    return meta


def family_to_json(fam):
    doc = _family_meta(fam)
    doc["values"] = [format_value(v) for v in fam.values]
    return json.dumps(doc, indent=2) + "\n"


def _parse_values(ring, strings):
    parse = parse_x_poly if ring == "x" else parse_lambda_poly
    return tuple(parse(s) for s in strings)


def family_from_json(text):
    from .families import Family

    doc = json.loads(text)
    params = {k: doc[k] for k in ("p", "r") if k in doc}
    return Family(doc["family"], doc["n_max"], _parse_values(doc["ring"], doc["values"]), params)


def family_to_csv(fam):
    buf = io.StringIO()
    for key, value in _family_meta(fam).items():
        buf.write(f"# {key}={value}\n")
    buf.write("n,value\n")
    for n, v in enumerate(fam.values):
        if v.is_constant() and (isinstance(v, LambdaPoly) or v.constant().is_constant()):
            buf.write(f"{n},{format_value(v)}\n")
        else:
            buf.write(f'{n},"{format_value(v)}"\n')
    return buf.getvalue()


def family_from_csv(text):
    from .families import Family

    meta, header, rows = _read_csv(text)
    if header != ["n", "value"]:
        raise ValueError(f"unexpected CSV header {header!r}")
    params = {k: int(meta[k]) for k in ("p", "r") if k in meta}
    values = _parse_values(meta["ring"], [value for _, value in rows])
    return Family(meta["family"], int(meta["n_max"]), values, params)
