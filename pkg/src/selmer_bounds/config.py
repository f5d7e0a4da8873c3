"""Reading field, extension and lattice descriptions from INI-style files.

Extension file::

    [extension]
    degree_kf = 6
    ramified = 2, 3

    [base]
    kind = rational

    [top]
    kind = monogenic
    minpoly = 108, 0, 0, 0, 0, 0, 1

An optional [run] section may set p, x, ell, cutoff, mode, shards and
conjectural; command-line flags override it.

A file without a [base] section describes a single field K, taken over Q.
Monogenic fields accept ``discriminant``, ``ramified``, ``index_coprime``
and ``split.<ell> = 2x1 2x1`` (one e x f pair per prime above ell).

Lattice file, either explicit matrices or a permutation shorthand::

    [lattice]
    rank = 1
    generator.1 = -1

    [lattice]
    kind = augmentation
    perm.1 = 1 2 3 4 0
    perm.2 = 0 2 4 1 3
"""

from __future__ import annotations

import configparser
import re
from pathlib import Path

from . import lattice as lat
from . import numfield as nf


class ConfigError(ValueError):
    pass


def _ints(text: str) -> list[int]:
    parts = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        return [int(t) for t in parts]
    except ValueError as exc:
        raise ConfigError(f"expected integers, got {text!r}") from exc


def _read(path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    text = Path(path).read_text(encoding="utf-8")
    if not re.match(r"\s*(#[^\n]*\n\s*)*\[", text):
        text = "[field]\n" + text
    cp.read_string(text, source=str(path))
    return cp


def field_from_section(sec) -> nf.FieldDesc:
    kind = sec.get("kind", "").strip().lower()
    if kind == "rational":
        return nf.Rational()
    if kind == "quadratic":
        return nf.Quadratic(int(sec["d"]))
    if kind == "multiquadratic":
        return nf.Multiquadratic(tuple(_ints(sec["generators"])))
    if kind == "monogenic":
        splitting = {}
        for key, value in sec.items():
            if key.startswith("split."):
                pairs = []
                for tok in value.split():
                    e, _, f = tok.lower().partition("x")
                    pairs.append((int(e), int(f)))
                splitting[int(key[6:])] = tuple(pairs)
        return nf.Monogenic(
            tuple(_ints(sec["minpoly"])),
            discriminant=int(sec["discriminant"]) if "discriminant" in sec else None,
            ramified=frozenset(_ints(sec["ramified"])) if "ramified" in sec else None,
            index_coprime=sec.getboolean("index_coprime", fallback=False),
            splitting=splitting,
        )
    raise ConfigError(f"unknown field kind {kind!r}")


def _field_section(cp):
    if cp.has_section("field"):
        return cp["field"]
    named = [s for s in cp.sections() if s != "run"]
    if not named:
        raise ConfigError("no field description found")
    return cp[named[0]]


def load_extension(path) -> nf.ExtensionDesc:
    cp = _read(path)
    try:
        if cp.has_section("base"):
            base = field_from_section(cp["base"])
            top = field_from_section(cp["top"]) if cp.has_section("top") else None
            meta = cp["extension"] if cp.has_section("extension") else {}
        else:
            sec = _field_section(cp)
            base, top, meta = nf.Rational(), field_from_section(sec), sec
        if "ramified" in meta:
            ram = frozenset(_ints(meta["ramified"]))
        elif top is not None:
            ram = nf.ramified_support(top)
        else:
            raise ConfigError("ramified primes of K must be given when [top] is absent")
        if "degree_kf" in meta:
            kf = int(meta["degree_kf"])
        elif top is not None:
            kf = nf.degree(top) // nf.degree(base)
        else:
            raise ConfigError("degree_kf must be given when [top] is absent")
        return nf.ExtensionDesc(base, top, kf, ram)
    except KeyError as exc:
        raise ConfigError(f"{path}: missing key {exc}") from exc


def load_lattice(path) -> lat.LatticeDesc:
    cp = _read(path)
    sec = cp["lattice"] if cp.has_section("lattice") else cp[cp.sections()[0]]
    kind = sec.get("kind", "matrices").strip().lower()
    bound = int(sec.get("order_bound", lat.DEFAULT_ORDER_BOUND))
    if kind == "cyclotomic5":
        return lat.cyclotomic5_lattice()
    if kind == "cyclotomic5-prime":
        return lat.cyclotomic5_prime_lattice()
    numbered = sorted((k for k in sec if "." in k), key=lambda k: int(k.split(".")[1]))
    if kind in ("augmentation", "permutation"):
        perms = [_ints(sec[k]) for k in numbered if k.startswith("perm.")]
        if not perms:
            raise ConfigError("permutation lattice needs perm.<i> entries")
        build = lat.augmentation_lattice if kind == "augmentation" else lat.permutation_lattice
        return build(perms)
    if kind == "matrices":
        m = int(sec["rank"])
        gens = []
        for k in numbered:
            if k.startswith("generator."):
                flat = _ints(sec[k])
                if len(flat) != m * m:
                    raise ConfigError(f"{k} has {len(flat)} entries, expected {m * m}")
                gens.append(tuple(tuple(flat[i * m : (i + 1) * m]) for i in range(m)))
        return lat.LatticeDesc(m, tuple(gens), bound)
    raise ConfigError(f"unknown lattice kind {kind!r}")


RUN_KEYS = {"p": int, "x": int, "ell": int, "cutoff": int, "mode": str, "shards": int}


def load_run_defaults(path) -> dict:
    """Scalars from an optional [run] section; command-line flags take precedence."""
    cp = _read(path)
    if not cp.has_section("run"):
        return {}
    out = {}
    for key, value in cp["run"].items():
        if key == "conjectural":
            out[key] = cp["run"].getboolean(key)
        elif key in RUN_KEYS:
            try:
                out[key] = RUN_KEYS[key](value.strip())
            except ValueError as exc:
                raise ConfigError(f"[run] {key}: {value!r}") from exc
        else:
            raise ConfigError(f"unknown [run] key {key!r}")
    return out
