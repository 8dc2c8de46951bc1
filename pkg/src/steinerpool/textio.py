"""Plain-text file formats (ASCII, LF line endings, no trailing whitespace).

Design::

    design v=<int> b=<int>
    <b lines of ascending point indices>
    [resolution classes=<r>
     <r lines of block indices>]

Difference family::

    cdf v=<int> k=<int> radical=<0|1>
    <one base block per line>

Pooling matrix::

    pools u=<int> v=<int>
    <u lines of item indices>
"""

from __future__ import annotations

from .cyclic import DifferenceFamily
from .design import Design, Resolution
from .errors import FormatError
from .pooling import PoolingMatrix


def _ints(line: str) -> list[int]:
    return [int(x) for x in line.split(" ")] if line else []


def _header(line: str, tag: str, keys: list[str]) -> dict[str, int]:
    parts = line.split(" ")
    if parts[0] != tag or len(parts) != len(keys) + 1:
        raise FormatError(f"expected header '{tag} {' '.join(k + '=' for k in keys)}...', got {line!r}")
    out = {}
    for key, part in zip(keys, parts[1:]):
        name, sep, val = part.partition("=")
        if name != key or not sep:
            raise FormatError(f"expected {key}=<int> in header {line!r}")
        out[key] = int(val)
    return out


def _lines(text: str) -> list[str]:
    if "\r" in text:
        raise FormatError("CR characters are not allowed")
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    for i, ln in enumerate(lines, 1):
        if ln != ln.strip() or "  " in ln:
            raise FormatError(f"line {i}: stray whitespace")
    return lines


def _int_line(line: str, where: str) -> list[int]:
    try:
        return _ints(line)
    except ValueError:
        raise FormatError(f"{where}: not a list of integers: {line!r}") from None


def write_design(design: Design, resolution: Resolution | None = None) -> str:
    lines = [f"design v={design.v} b={design.b}"]
    lines += [" ".join(map(str, blk)) for blk in design.blocks]
    if resolution is not None:
        lines.append(f"resolution classes={len(resolution)}")
        lines += [" ".join(map(str, cls)) for cls in resolution.classes]
    return "\n".join(lines) + "\n"


def read_design(text: str) -> tuple[Design, Resolution | None]:
    lines = _lines(text)
    head = _header(lines[0], "design", ["v", "b"])
    b = head["b"]
    if len(lines) < 1 + b:
        raise FormatError(f"header promises {b} blocks, file has {len(lines) - 1} lines")
    raw = [_int_line(lines[1 + i], f"block {i}") for i in range(b)]
    for i, blk in enumerate(raw):
        if blk != sorted(set(blk)):
            raise FormatError(f"block {i} is not strictly ascending")
    design = Design.normalize(head["v"], raw)
    rest = lines[1 + b:]
    if not rest:
        return design, None
    r = _header(rest[0], "resolution", ["classes"])["classes"]
    if len(rest) != 1 + r:
        raise FormatError(f"resolution promises {r} classes, file has {len(rest) - 1} lines")
    remap = [design.index(blk) for blk in raw]
    classes = []
    for ln in rest[1:]:
        idx = _int_line(ln, "resolution class")
        if any(not 0 <= i < b for i in idx):
            raise FormatError("resolution names a block index out of range")
        classes.append([remap[i] for i in idx])
    return design, Resolution.of(classes)


def write_cdf(fam: DifferenceFamily) -> str:
    lines = [f"cdf v={fam.v} k={fam.k} radical={int(fam.radical)}"]
    lines += [" ".join(map(str, blk)) for blk in fam.base_blocks]
    return "\n".join(lines) + "\n"


def read_cdf(text: str) -> DifferenceFamily:
    lines = _lines(text)
    head = _header(lines[0], "cdf", ["v", "k", "radical"])
    if head["radical"] not in (0, 1):
        raise FormatError("radical must be 0 or 1")
    blocks = tuple(tuple(_int_line(ln, "base block")) for ln in lines[1:])
    return DifferenceFamily(head["v"], head["k"], blocks, bool(head["radical"]))


def write_pools(H: PoolingMatrix) -> str:
    lines = [f"pools u={H.u} v={H.v}"] + [" ".join(map(str, p)) for p in H.pools]
    return "\n".join(lines) + "\n"


def read_pools(text: str) -> PoolingMatrix:
    lines = _lines(text)
    head = _header(lines[0], "pools", ["u", "v"])
    if len(lines) - 1 != head["u"]:
        raise FormatError(f"header promises {head['u']} pools, file has {len(lines) - 1}")
    return PoolingMatrix.of(head["v"], [_int_line(ln, "pool") for ln in lines[1:]])


def read_report(text: str) -> dict[str, str]:
    out = {}
    for ln in _lines(text):
        key, sep, val = ln.partition("=")
        if not sep:
            raise FormatError(f"report line without '=': {ln!r}")
        out[key] = val
    return out
