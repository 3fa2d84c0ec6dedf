"""A small DSL for building the sets used in experiments.

Grammar::

    spec    := prod | random | list | named
    prod    := "prod(" spec (";" spec)* ")"      # one 1D factor per axis
    random  := "random" (":" opts | "(" opts ")")
    opts    := "p=" P ("," "atoms=" ("yes"|"no"))?
    list    := "list:" (int ("," int)* | ("(" int ("," int)* ")")+)
    named   := "odds" | "evens" | "full" | "primes" | "squares"
             | "powers:" k | "file:" PATH

``P`` is a decimal or a fraction such as ``1/2``. ``powers:k`` is the set of
k-th powers ``{1, 2^k, 3^k, ...}``. ``full``, ``random``, ``list`` and
``file`` work in any dimension; the other names are one-dimensional and are
lifted to a box with ``prod``, factor ``i`` living on ``1..m_i``.

Random sets draw one ``numpy.random.Generator(PCG64(seed))`` per build and
consume it in cone order, so ``(spec, box, seed)`` fully determines the set.
"""
from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .order_core import Box, atoms
from .pointset import PointSet

ONE_D = ("odds", "evens", "full", "primes", "squares", "powers", "file", "list", "random")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text!r}")


def primes_upto(N: int) -> list[int]:
    if N < 2:
        return []
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).tolist()


def kth_powers_upto(N: int, k: int) -> list[int]:
    if k < 1:
        raise ValueError("power must be >= 1")
    out, b = [], 1
    while b**k <= N:
        out.append(b**k)
        b += 1
    return out


def read_points_file(path: str | Path) -> list[tuple[int, ...]]:
    """One point per line, comma-separated coordinates; '#' starts a comment."""
    pts = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            pts.append(tuple(int(v) for v in line.split(",")))
    return pts


class _Parser:
    def __init__(self, text: str, rng: np.random.Generator):
        self.text = text
        self.pos = 0
        self.rng = rng

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            self.error("expected a set name")
        return self.text[start:self.pos]

    def until(self, stops: str) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        if self.peek("-"):
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            self.error("expected an integer", start)

    def parse(self, box: Box, stops: str = "") -> PointSet:
        start = self.pos
        name = self.word()
        if name == "prod":
            return self.prod(box, start)
        if name == "random":
            return self.random(box)
        if name == "list":
            self.expect(":")
            return self.list_(box)
        if name == "full":
            return PointSet.full(box)
        if name == "file":
            self.expect(":")
            path = self.until(stops)
            try:
                pts = read_points_file(path)
            except FileNotFoundError:
                raise FileNotFoundError(f"set file not found: {path}") from None
            return PointSet.from_points(pts, box)
        if name not in ONE_D:
            self.error(f"unknown set {name!r}", start)
        if box.n != 1:
            self.error(f"{name!r} is one-dimensional; use prod(...)", start)
        N = box.m[0]
        if name == "odds":
            vals = range(1, N + 1, 2)
        elif name == "evens":
            vals = range(2, N + 1, 2)
        elif name == "primes":
            vals = primes_upto(N)
        elif name == "squares":
            vals = kth_powers_upto(N, 2)
        else:  # powers
            self.expect(":")
            vals = kth_powers_upto(N, self.integer())
        return PointSet.from_points(vals, box)

    def prod(self, box: Box, start: int) -> PointSet:
        self.expect("(")
        factors = []
        while True:
            axis = len(factors)
            if axis >= box.n:
                self.error(f"prod has more factors than the {box.n} box dimensions")
            factors.append(self.parse(Box.line(box.m[axis]), stops=";)").integers())
            if self.peek(";"):
                self.pos += 1
                continue
            self.expect(")")
            break
        if len(factors) != box.n:
            self.error(f"prod needs {box.n} factors, got {len(factors)}", start)
        grid = np.zeros(box.shape, dtype=bool)
        grid[np.ix_(*[np.array(f, dtype=int) for f in factors])] = True
        return PointSet.from_grid(grid, box)

    def random(self, box: Box) -> PointSet:
        if self.peek("("):
            self.pos += 1
            opts, close = self.until(")"), True
        else:
            self.expect(":")
            opts, close = self.until(";)"), False
        opts_start = self.pos - len(opts)
        if close:
            self.expect(")")
        settings = {}
        for item in opts.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                self.error(f"bad random option {item!r}", opts_start)
            settings[key.strip()] = val.strip()
        if "p" not in settings:
            self.error("random needs p=P", opts_start)
        try:
            p = Fraction(settings.pop("p"))
        except ValueError:
            self.error("p is not a number", opts_start)
        if not 0 <= p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        force = settings.pop("atoms", "no")
        if force not in ("yes", "no") or settings:
            self.error(f"unknown random options {settings or force!r}", opts_start)
        return random_set(box, p, self.rng, force_atoms=force == "yes")

    def list_(self, box: Box) -> PointSet:
        pts = []
        if self.peek("("):
            while self.peek("("):
                self.pos += 1
                coords = [self.integer()]
                while self.peek(","):
                    self.pos += 1
                    coords.append(self.integer())
                self.expect(")")
                pts.append(tuple(coords))
        else:
            pts.append((self.integer(),))
            while self.peek(","):
                self.pos += 1
                pts.append((self.integer(),))
        for x in pts:
            if x not in box:
                raise ValueError(f"{x} is not in the boxed cone {box.m}")
        return PointSet.from_points(pts, box)


def parse_and_build(spec: str, box: Box, seed: int = 0) -> PointSet:
    """Build the set described by ``spec`` inside ``box``."""
    parser = _Parser(spec.strip(), np.random.Generator(np.random.PCG64(seed)))
    S = parser.parse(box)
    if parser.pos != len(parser.text):
        parser.error("unexpected trailing input")
    return S


def random_set(box: Box, p, rng: np.random.Generator, force_atoms: bool = False) -> PointSet:
    """Coin-flip set drawn from an existing generator (for batch experiments)."""
    flips = rng.random(box.cone_size) < float(p)
    S = PointSet.from_grid(np.concatenate([[False], flips]).reshape(box.shape), box)
    if force_atoms:
        S = S | PointSet.from_points(atoms(box.n), box)
    return S
