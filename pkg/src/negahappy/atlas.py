"""Fixed points, cycles and extremal happy numbers of ``S_{e,b}``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

from negahappy.errors import NotFound, PreconditionError
from negahappy.happy import PowerParams, is_happy, power_sum, threshold, trajectory

DEFAULT_SEARCH_FLOOR = -(10**6)
DEFAULT_SEARCH_CEILING = 10**6


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate a cycle so that its minimum comes first."""
    cycle = tuple(cycle)
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


@dataclass(frozen=True)
class CycleAtlas:
    b: int
    e: int
    fixed_points: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    u_set: tuple[int, ...]
    smallest_happy_gt1: int
    largest_negative_happy: int

    @property
    def params(self) -> PowerParams:
        return PowerParams(self.b, self.e)

    def cycle_of(self, u: int) -> tuple[int, ...]:
        """The periodic orbit through ``u``, starting at ``u``."""
        if u in self.fixed_points:
            return (u,)
        for cyc in self.cycles:
            if u in cyc:
                i = cyc.index(u)
                return cyc[i:] + cyc[:i]
        raise PreconditionError(f"{u} is not periodic for S_{{{self.e},{self.b}}}")

    def to_json(self) -> dict:
        return {
            "base": self.b,
            "fixed_points": list(self.fixed_points),
            "cycles": [list(c) for c in self.cycles],
            "smallest_happy": self.smallest_happy_gt1,
            "largest_negative_happy": self.largest_negative_happy,
        }


def periodic_orbits(b: int, e: int = 2, bound: int | None = None) -> list[tuple[int, ...]]:
    """All orbits of ``S`` reached from ``1..bound``, canonically rotated and sorted.

    For ``e = 2`` the bound defaults to :func:`threshold`, which is enough to
    see every periodic point; other exponents need an explicit bound.
    """
    if bound is None:
        if e != 2:
            raise PreconditionError("exponents other than 2 need an explicit search bound")
        bound = threshold(b)
    PowerParams(b, e)
    orbits = set()
    periodic: set[int] = set()
    for a in range(1, bound + 1):
        if a in periodic:
            continue
        traj = trajectory(a, b, e)
        cyc = traj.cycle
        if cyc[0] not in periodic:
            periodic.update(cyc)
            orbits.add(canonical_cycle(cyc))
    return sorted(orbits, key=lambda c: c[0])


def u_set(b: int, e: int = 2, bound: int | None = None) -> tuple[int, ...]:
    return tuple(sorted(x for orbit in periodic_orbits(b, e, bound) for x in orbit))


def smallest_happy_above_one(b: int, e: int = 2, ceiling: int = DEFAULT_SEARCH_CEILING) -> int:
    for a in range(2, ceiling + 1):
        if is_happy(a, b, e):
            return a
    raise NotFound(f"no happy number in [2, {ceiling}] for base {b}")


def largest_negative_happy(b: int, e: int = 2, floor: int = DEFAULT_SEARCH_FLOOR, start: int = -1) -> int:
    """Scan down from ``start`` to ``floor`` for a happy number.

    The default ``start=-1`` reproduces the reference table, whose base -3
    entry is -1 itself; pass ``start=-2`` for the strict ``< -1`` reading.
    """
    for a in range(start, floor - 1, -1):
        if is_happy(a, b, e):
            return a
    raise NotFound(f"no happy number in [{floor}, {start}] for base {b}")


def enumerate_atlas(
    b: int,
    e: int = 2,
    bound: int | None = None,
    search_floor: int = DEFAULT_SEARCH_FLOOR,
    search_ceiling: int = DEFAULT_SEARCH_CEILING,
) -> CycleAtlas:
    orbits = periodic_orbits(b, e, bound)
    fixed = tuple(o[0] for o in orbits if len(o) == 1)
    cycles = tuple(o for o in orbits if len(o) > 1)
    return CycleAtlas(
        b=b,
        e=e,
        fixed_points=fixed,
        cycles=cycles,
        u_set=tuple(sorted(x for o in orbits for x in o)),
        smallest_happy_gt1=smallest_happy_above_one(b, e, search_ceiling),
        largest_negative_happy=largest_negative_happy(b, e, search_floor),
    )


@lru_cache(maxsize=64)
def cached_atlas(b: int, e: int = 2) -> CycleAtlas:
    """Default-parameter atlas, computed once per ``(b, e)``."""
    return enumerate_atlas(b, e)


def check_atlas(atlas: CycleAtlas) -> list[str]:
    """Invariant violations of an atlas (empty when consistent)."""
    b, e = atlas.b, atlas.e
    problems = []
    for f in atlas.fixed_points:
        if power_sum(f, b, e) != f:
            problems.append(f"{f} is not fixed")
    for cyc in atlas.cycles:
        if len(cyc) < 2:
            problems.append(f"cycle {cyc} has length < 2")
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            if power_sum(x, b, e) != y:
                problems.append(f"S({x}) != {y} in cycle {cyc}")
    union = sorted(set(atlas.fixed_points).union(*map(set, atlas.cycles)))
    if tuple(union) != atlas.u_set:
        problems.append("u_set is not the union of fixed points and cycles")
    if 1 not in atlas.fixed_points:
        problems.append("1 is not a fixed point")
    if e == 2:
        bound = threshold(b)
        if atlas.fixed_points and max(atlas.fixed_points) > bound:
            problems.append("fixed point above threshold")
        if any(min(c) > bound for c in atlas.cycles):
            problems.append("cycle without an element below threshold")
    return problems


def table(bases, e: int = 2, **kwargs) -> list[CycleAtlas]:
    """One atlas per base, in the order given."""
    return [enumerate_atlas(b, e, **kwargs) for b in bases]


def parse_base_range(text: str) -> list[int]:
    """``"-10..-2"`` -> ``[-2, -3, ..., -10]`` (closest to zero first, as in the table)."""
    if ".." in text:
        lo, hi = (int(x) for x in text.split("..", 1))
        lo, hi = min(lo, hi), max(lo, hi)
        return list(range(hi, lo - 1, -1))
    return [int(text)]


def _fmt_cycles(cycles) -> str:
    return ", ".join("(" + ",".join(map(str, c)) + ")" for c in cycles) or "None"


def render_table(atlases: list[CycleAtlas]) -> str:
    header = ("Base", "Fixed Points", "Cycles", "Smallest happy > 1", "Largest negative happy")
    rows = [
        (
            str(a.b),
            ",".join(map(str, a.fixed_points)),
            _fmt_cycles(a.cycles),
            str(a.smallest_happy_gt1),
            str(a.largest_negative_happy),
        )
        for a in atlases
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [header, *rows]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def table_json(atlases: list[CycleAtlas]) -> str:
    return json.dumps([a.to_json() for a in atlases], indent=2)


def load_golden() -> list[dict]:
    """The reference table shipped with the package."""
    text = files("negahappy").joinpath("data/reference_table.json").read_text()
    return json.loads(text)["rows"]


def matches_golden(atlas: CycleAtlas, row: dict) -> list[str]:
    """Differences between a computed atlas and a golden row; cycles compared up to rotation."""
    diffs = []
    if list(atlas.fixed_points) != sorted(row["fixed_points"]):
        diffs.append(f"fixed points {atlas.fixed_points} != {row['fixed_points']}")
    want = {canonical_cycle(c) for c in row["cycles"]}
    if set(atlas.cycles) != want:
        diffs.append(f"cycles {atlas.cycles} != {sorted(want)}")
    if atlas.smallest_happy_gt1 != row["smallest_happy"]:
        diffs.append(f"smallest happy {atlas.smallest_happy_gt1} != {row['smallest_happy']}")
    if atlas.largest_negative_happy != row["largest_negative_happy"]:
        diffs.append(f"largest negative happy {atlas.largest_negative_happy} != {row['largest_negative_happy']}")
    return diffs

