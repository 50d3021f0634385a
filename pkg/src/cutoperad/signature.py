"""Signatures: the free generating collections, one per direction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import SignatureError


@dataclass(frozen=True)
class Generator:
    name: str
    arity: int
    direction: int


@dataclass(frozen=True)
class Signature:
    """``d`` directions; ``generators[k-1]`` lists the generators of direction k.

    Each entry is a ``(name, arity)`` pair. Names are global across
    directions, arities are at least 2.
    """

    d: int
    generators: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(tuple((str(n), int(a)) for n, a in direction)
                     for direction in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.d < 1:
            raise SignatureError(f"need at least one direction, got d={self.d}")
        if len(gens) != self.d:
            raise SignatureError(
                f"expected {self.d} generator lists, got {len(gens)}")
        index = {}
        for k, direction in enumerate(gens, start=1):
            for name, arity in direction:
                if arity < 2:
                    raise SignatureError(
                        f"generator {name!r} has arity {arity}; arities must be >= 2")
                if name in index:
                    raise SignatureError(f"generator name {name!r} is used twice")
                if not name or any(c in name for c in "()\"' \t\n"):
                    raise SignatureError(f"invalid generator name {name!r}")
                index[name] = Generator(name, arity, k)
        object.__setattr__(self, "_index", index)

    def __getitem__(self, name) -> Generator:
        try:
            return self._index[name]
        except KeyError:
            raise SignatureError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def arity(self, name) -> int:
        return self[name].arity

    def direction(self, name) -> int:
        return self[name].direction

    def in_direction(self, k) -> tuple:
        """Generators of direction ``k`` (1-based) as ``Generator`` records."""
        return tuple(self._index[n] for n, _ in self.generators[k - 1])

    def all_generators(self) -> list:
        return [self._index[n] for direction in self.generators for n, _ in direction]

    def arity_counts(self, k) -> dict:
        """Map arity -> number of direction-``k`` generators with that arity."""
        counts = {}
        for _, a in self.generators[k - 1]:
            counts[a] = counts.get(a, 0) + 1
        return counts

    def to_json(self) -> dict:
        return {"d": self.d,
                "generators": [[{"name": n, "arity": a} for n, a in direction]
                               for direction in self.generators]}

    @classmethod
    def from_json(cls, data) -> "Signature":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            d = data["d"]
            gens = [[(g["name"], g["arity"]) for g in direction]
                    for direction in data["generators"]]
        except (KeyError, TypeError) as exc:
            raise SignatureError(f"malformed signature document: {exc}") from exc
        if not isinstance(d, int):
            raise SignatureError("'d' must be an integer")
        return cls(d, tuple(gens))

    @classmethod
    def load(cls, path) -> "Signature":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SignatureError(
                    f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(data)


def make_signature(*directions: Iterable) -> Signature:
    """Build a signature from per-direction iterables of ``(name, arity)``."""
    return Signature(len(directions), tuple(tuple(d) for d in directions))


def binary_signature(d=2) -> Signature:
    """One binary generator per direction, named h, v, z for d <= 3."""
    names = ["h", "v", "z"] if d <= 3 else [f"b{k}" for k in range(1, d + 1)]
    return make_signature(*[[(names[k], 2)] for k in range(d)])
