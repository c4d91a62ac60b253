"""Line-oriented text formats for categories and expansion functors.

Category format:

    objects: n
    obj <id> <label>
    mor <id> <dom> <cod> <label>
    cmp <g> <f> <gf>

Identities are not stored; they are inferred on load.  A functor file holds
two category blocks introduced by `upstairs:` and `downstairs:` headers,
followed by `umap obj <up> <down>` and `umap mor <up> <down>` lines.
"""

from __future__ import annotations

import io as _io
from typing import TextIO

from .core import CategoryError, FiniteCategory


class ParseError(CategoryError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _parse_category_lines(lines: list[tuple[int, str]]) -> FiniteCategory:
    n_objects = None
    labels: dict[int, str] = {}
    mors: dict[int, tuple[int, int, str]] = {}
    compose: dict[tuple[int, int], int] = {}

    for ln, line in lines:
        parts = line.split()
        if parts[0] == "objects:":
            if n_objects is not None:
                raise ParseError(ln, "duplicate objects header")
            n_objects = int(parts[1])
        elif parts[0] == "obj":
            oid = int(parts[1])
            if oid in labels:
                raise ParseError(ln, f"duplicate object id {oid}")
            labels[oid] = parts[2] if len(parts) > 2 else str(oid)
        elif parts[0] == "mor":
            mid = int(parts[1])
            if mid in mors:
                raise ParseError(ln, f"duplicate morphism id {mid}")
            mors[mid] = (int(parts[2]), int(parts[3]), parts[4] if len(parts) > 4 else str(mid))
        elif parts[0] == "cmp":
            g, f, gf = int(parts[1]), int(parts[2]), int(parts[3])
            if (g, f) in compose:
                raise ParseError(ln, f"duplicate composition entry ({g},{f})")
            compose[(g, f)] = gf
        else:
            raise ParseError(ln, f"unknown directive {parts[0]!r}")

    if n_objects is None:
        raise ParseError(lines[0][0] if lines else 0, "missing objects header")
    for oid in labels:
        if not (0 <= oid < n_objects):
            raise ParseError(0, f"object id {oid} out of range")
    object_labels = [labels.get(i, str(i)) for i in range(n_objects)]
    n_mor = len(mors)
    if set(mors) != set(range(n_mor)):
        raise ParseError(0, "morphism ids must be 0..m-1 without gaps")
    for ln, line in lines:
        parts = line.split()
        if parts[0] == "mor":
            d, c = int(parts[2]), int(parts[3])
            if not (0 <= d < n_objects and 0 <= c < n_objects):
                raise ParseError(ln, "dangling object reference")
        elif parts[0] == "cmp":
            for tok in parts[1:4]:
                if not (0 <= int(tok) < n_mor):
                    raise ParseError(ln, f"dangling morphism reference {tok}")
    morphisms = [mors[i] for i in range(n_mor)]
    return FiniteCategory(object_labels, morphisms, compose)


def load_category(stream: TextIO) -> FiniteCategory:
    lines = [
        (i + 1, s.strip())
        for i, s in enumerate(stream.read().splitlines())
        if s.strip() and not s.strip().startswith("#")
    ]
    return _parse_category_lines(lines)


def loads_category(text: str) -> FiniteCategory:
    return load_category(_io.StringIO(text))


def load_category_file(path: str) -> FiniteCategory:
    with open(path, encoding="utf-8") as fh:
        return load_category(fh)


def dump_category(cat: FiniteCategory, stream: TextIO) -> None:
    stream.write(f"objects: {cat.n_objects}\n")
    for o in range(cat.n_objects):
        stream.write(f"obj {o} {cat.object_labels[o]}\n")
    for m in range(cat.n_morphisms):
        stream.write(f"mor {m} {cat.mor_dom[m]} {cat.mor_cod[m]} {cat.mor_labels[m]}\n")
    for g, f, gf in sorted(cat.compose_entries()):
        stream.write(f"cmp {g} {f} {gf}\n")


def dumps_category(cat: FiniteCategory) -> str:
    buf = _io.StringIO()
    dump_category(cat, buf)
    return buf.getvalue()


def dump_category_file(cat: FiniteCategory, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        dump_category(cat, fh)


def load_functor(stream: TextIO):
    from .expansions import ExpansionFunctor

    raw = [
        (i + 1, s.strip())
        for i, s in enumerate(stream.read().splitlines())
        if s.strip() and not s.strip().startswith("#")
    ]
    sections: dict[str, list[tuple[int, str]]] = {"upstairs": [], "downstairs": [], "umap": []}
    current: str | None = None
    for ln, line in raw:
        if line == "upstairs:":
            current = "upstairs"
        elif line == "downstairs:":
            current = "downstairs"
        elif line.startswith("umap "):
            sections["umap"].append((ln, line))
        elif current is None:
            raise ParseError(ln, "content before upstairs:/downstairs: header")
        else:
            sections[current].append((ln, line))
    if not sections["upstairs"] or not sections["downstairs"]:
        raise ParseError(0, "functor file needs both category blocks")
    upstairs = _parse_category_lines(sections["upstairs"])
    downstairs = _parse_category_lines(sections["downstairs"])
    obj_map: dict[int, int] = {}
    mor_map: dict[int, int] = {}
    for ln, line in sections["umap"]:
        parts = line.split()
        if len(parts) != 4 or parts[1] not in ("obj", "mor"):
            raise ParseError(ln, "expected `umap obj|mor <up> <down>`")
        up, down = int(parts[2]), int(parts[3])
        target = obj_map if parts[1] == "obj" else mor_map
        if up in target:
            raise ParseError(ln, f"duplicate umap entry for {parts[1]} {up}")
        target[up] = down
    return ExpansionFunctor(upstairs=upstairs, downstairs=downstairs, object_map=obj_map, morphism_map=mor_map)


def load_functor_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_functor(fh)


def dump_functor(functor, stream: TextIO) -> None:
    stream.write("upstairs:\n")
    dump_category(functor.upstairs, stream)
    stream.write("downstairs:\n")
    dump_category(functor.downstairs, stream)
    for up in sorted(functor.object_map):
        stream.write(f"umap obj {up} {functor.object_map[up]}\n")
    for up in sorted(functor.morphism_map):
        stream.write(f"umap mor {up} {functor.morphism_map[up]}\n")


def dump_functor_file(functor, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        dump_functor(functor, fh)
