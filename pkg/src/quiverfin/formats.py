"""Line-oriented text formats for settings, algebras and witnesses.

Setting files::

    # Kronecker quiver
    vertices: a b
    arrow: a b
    arrow: a b
    dim: a=1 b=1

Algebra files::

    blocks: 2 1
    rank: 0 1
    rank: 1 0

``#`` starts a comment, tokens are whitespace separated and vertex names
match ``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import re

from .algebra import AlgebraSpec
from .core import DimVector, Embedding, Quiver, QuiverSetting
from .euclid import EuclideanType, EuclideanWitness, SubrootWitness
from .errors import QuiverError

NAME = re.compile(r"[A-Za-z0-9_]+\Z")
NATURAL = re.compile(r"[0-9]+\Z")


class ParseError(QuiverError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(lineno, f"expected 'directive: ...', got {line!r}")
        yield lineno, key.strip(), rest.split()


def _natural(lineno, what, token):
    if token.startswith("-") and NATURAL.match(token[1:]):
        raise ParseError(lineno, f"{what} is negative: {token}")
    if not NATURAL.match(token):
        raise ParseError(lineno, f"{what} is not a natural number: {token!r}")
    return int(token)


def parse_setting(text: str) -> QuiverSetting:
    vertices = None
    arrows, dims = [], {}
    for lineno, key, tokens in _lines(text):
        if key == "vertices":
            if vertices is not None:
                raise ParseError(lineno, "vertices declared twice")
            for tok in tokens:
                if not NAME.match(tok):
                    raise ParseError(lineno, f"bad vertex name {tok!r}")
            if len(set(tokens)) != len(tokens):
                raise ParseError(lineno, "duplicate vertex name")
            vertices = tuple(tokens)
            continue
        if key not in ("arrow", "dim"):
            raise ParseError(lineno, f"unknown directive {key!r}")
        if vertices is None:
            raise ParseError(lineno, f"'{key}' before 'vertices'")
        if key == "arrow":
            if len(tokens) != 2:
                raise ParseError(lineno, "an arrow needs exactly a source and a target")
            for tok in tokens:
                if tok not in vertices:
                    raise ParseError(lineno, f"undeclared vertex {tok!r}")
            arrows.append((tokens[0], tokens[1]))
        else:
            for tok in tokens:
                name, eq, value = tok.partition("=")
                if not eq:
                    raise ParseError(lineno, f"expected name=value, got {tok!r}")
                if name not in vertices:
                    raise ParseError(lineno, f"undeclared vertex {name!r}")
                if name in dims:
                    raise ParseError(lineno, f"dimension of {name!r} given twice")
                dims[name] = _natural(lineno, f"dimension of {name!r}", value)
    if vertices is None:
        raise ParseError(0, "no 'vertices' line")
    missing = [v for v in vertices if v not in dims]
    if missing:
        raise ParseError(0, f"missing dimension for {', '.join(missing)}")
    quiver = Quiver(vertices, tuple(arrows))
    return QuiverSetting(quiver, DimVector((v, dims[v]) for v in vertices))


def serialize_setting(setting: QuiverSetting) -> str:
    lines = ["vertices: " + " ".join(setting.quiver.vertices)]
    lines += [f"arrow: {s} {t}" for s, t in setting.quiver.arrows]
    lines.append("dim: " + " ".join(f"{v}={setting.dim[v]}" for v in setting.quiver.vertices))
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> AlgebraSpec:
    blocks, ranks = None, []
    for lineno, key, tokens in _lines(text):
        if key == "blocks":
            if blocks is not None:
                raise ParseError(lineno, "blocks declared twice")
            blocks = [_natural(lineno, "block size", t) for t in tokens]
            if not blocks or min(blocks) < 1:
                raise ParseError(lineno, "block sizes must be positive")
        elif key == "rank":
            if blocks is None:
                raise ParseError(lineno, "'rank' before 'blocks'")
            row = [_natural(lineno, "rank", t) for t in tokens]
            if len(row) != len(blocks):
                raise ParseError(lineno, f"rank row has {len(row)} entries, expected {len(blocks)}")
            ranks.append(tuple(row))
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if blocks is None:
        raise ParseError(0, "no 'blocks' line")
    if len(ranks) != len(blocks):
        raise ParseError(0, f"{len(ranks)} rank rows for {len(blocks)} blocks")
    return AlgebraSpec(tuple(blocks), tuple(ranks))


def serialize_algebra(spec: AlgebraSpec) -> str:
    lines = ["blocks: " + " ".join(map(str, spec.block_sizes))]
    lines += ["rank: " + " ".join(map(str, row)) for row in spec.ranks]
    return "\n".join(lines) + "\n"


def format_witness(witness: EuclideanWitness, ambient: QuiverSetting) -> str:
    order = ambient.quiver.index
    lines = [f"WITNESS type={witness.type} m={witness.multiplier}"]
    for v in sorted(witness.subquiver.vertices, key=order.__getitem__):
        lines.append(f"vertex {v} -> {witness.positions[v]} h={witness.radical[v]}")
    for k in sorted(witness.embedding.arrow_map):
        s, t = ambient.quiver.arrows[k]
        lines.append(f"arrow {s} {t} index={k}")
    return "\n".join(lines) + "\n"


def format_subroot(sub: SubrootWitness) -> str:
    body = " ".join(f"{v}={sub.vector[v]}" for v in sub.vector)
    return f"SUBROOT q={sub.q}\ndim: {body}\n"


def _field(lineno, token, name):
    key, eq, value = token.partition("=")
    if key != name or not eq:
        raise ParseError(lineno, f"expected {name}=..., got {token!r}")
    return value


def parse_witness(text: str, ambient: QuiverSetting) -> EuclideanWitness:
    """Rebuild a printed witness block against the ambient setting.

    Structural problems raise :class:`ParseError`; whether the witness is
    mathematically valid is left to :func:`quiverfin.euclid.verify_witness`.
    """
    header = None
    verts, arrows = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] == "WITNESS":
            if header is not None:
                raise ParseError(lineno, "more than one witness block")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'WITNESS type=<type> m=<int>'")
            header = (EuclideanType.parse(_field(lineno, tokens[1], "type")),
                      _natural(lineno, "multiplier", _field(lineno, tokens[2], "m")))
        elif header is None:
            continue
        elif tokens[0] == "vertex":
            if len(tokens) != 5 or tokens[2] != "->":
                raise ParseError(lineno, "expected 'vertex <v> -> <position> h=<int>'")
            if tokens[1] not in ambient.quiver.index:
                raise ParseError(lineno, f"unknown vertex {tokens[1]!r}")
            verts.append((tokens[1], tokens[3],
                          _natural(lineno, "h", _field(lineno, tokens[4], "h"))))
        elif tokens[0] == "arrow":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected 'arrow <s> <t> index=<k>'")
            k = _natural(lineno, "arrow index", _field(lineno, tokens[3], "index"))
            if k >= len(ambient.quiver.arrows) or ambient.quiver.arrows[k] != (tokens[1], tokens[2]):
                raise ParseError(lineno, f"ambient arrow {k} is not {tokens[1]}->{tokens[2]}")
            arrows.append(k)
        else:
            break
    if header is None:
        raise ParseError(0, "no WITNESS block")
    t, m = header
    order = ambient.quiver.index
    verts.sort(key=lambda item: order[item[0]])
    names = tuple(v for v, _, _ in verts)
    arrows.sort()
    sub = Quiver(names, tuple(ambient.quiver.arrows[k] for k in arrows))
    emb = Embedding(sub, ambient.quiver, {v: v for v in names}, tuple(arrows))
    radical = DimVector((v, h) for v, _, h in verts)
    return EuclideanWitness(t, emb, radical, {v: p for v, p, _ in verts}, m)
