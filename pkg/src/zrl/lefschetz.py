"""Fixed-point counts for actions on infinite places, and their dynamical twin.

The Euler characteristic attached to a number ring's archimedean fiber
is the number of infinite places r1 + r2.  An automorphism permutes the
places; its Lefschetz number is the number of fixed places, each
counted with sign +1 (the real tangent space at a place is
zero-dimensional, so the determinant sign degenerates to +1).  The
identity action therefore recovers r1 + r2.

The dynamical counterpart sums caller-supplied local traces weighted by
signs eps_x over the fixed points of a flow map; with no fixed points
the sum is empty and the compactly-supported trace vanishes, which is
what compact_support_vanishing_check asserts for orbit-only systems
such as the suspension flows built elsewhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, ParseError

PLACE_KINDS = ("real", "complex")


@dataclass(frozen=True)
class InfinitePlace:
    kind: str
    label: str = ""

    def __post_init__(self):
        if self.kind not in PLACE_KINDS:
            raise DomainError(f"place kind must be real or complex, got {self.kind!r}")


@dataclass(frozen=True)
class InfinitePlaceSet:
    places: tuple[InfinitePlace, ...]

    @property
    def r1(self) -> int:
        return sum(1 for p in self.places if p.kind == "real")

    @property
    def r2(self) -> int:
        return sum(1 for p in self.places if p.kind == "complex")

    @classmethod
    def from_signature(cls, r1: int, r2: int, degree: int | None = None) -> "InfinitePlaceSet":
        if r1 < 0 or r2 < 0:
            raise DomainError(f"signature entries must be >= 0, got ({r1}, {r2})")
        if r1 + r2 == 0:
            raise DomainError("a number field has at least one infinite place")
        if degree is not None and r1 + 2 * r2 != degree:
            raise DomainError(f"r1 + 2 r2 = {r1 + 2 * r2} does not match degree {degree}")
        reals = tuple(InfinitePlace("real", f"v{i + 1}") for i in range(r1))
        cplxs = tuple(InfinitePlace("complex", f"w{i + 1}") for i in range(r2))
        return cls(reals + cplxs)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(p)))


def _permutation_power(perm: Sequence[int], j: int) -> tuple[int, ...]:
    result = tuple(range(len(perm)))
    for _ in range(j):
        result = _compose(perm, result)
    return result


@dataclass(frozen=True)
class AutomorphismAction:
    """A permutation of place indices of finite order."""

    permutation: tuple[int, ...]
    order: int

    def __post_init__(self):
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)):
            raise DomainError(f"not a permutation of 0..{n - 1}: {self.permutation}")
        if self.order < 1:
            raise DomainError(f"order must be >= 1, got {self.order}")
        if _permutation_power(self.permutation, self.order) != tuple(range(n)):
            raise DomainError(f"permutation^{self.order} is not the identity")

    @classmethod
    def identity(cls, n: int) -> "AutomorphismAction":
        return cls(tuple(range(n)), 1)

    @classmethod
    def from_permutation(cls, permutation: Sequence[int]) -> "AutomorphismAction":
        """Infer the order as the lcm of cycle lengths."""
        perm = tuple(permutation)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise DomainError(f"not a permutation of 0..{n - 1}: {perm}")
        order = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = perm[i]
                length += 1
            order = order * length // math.gcd(order, length)
        return cls(perm, order)

    def power(self, j: int) -> "AutomorphismAction":
        return AutomorphismAction.from_permutation(_permutation_power(self.permutation, j % self.order))

    def orbit_count(self) -> int:
        seen = [False] * len(self.permutation)
        orbits = 0
        for start in range(len(self.permutation)):
            if seen[start]:
                continue
            orbits += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.permutation[i]
        return orbits


def _check_kinds(places: InfinitePlaceSet, action: AutomorphismAction) -> None:
    if len(action.permutation) != len(places.places):
        raise DomainError(
            f"permutation of {len(action.permutation)} indices on {len(places.places)} places"
        )
    for i, j in enumerate(action.permutation):
        if places.places[i].kind != places.places[j].kind:
            raise DomainError(
                f"place {i} ({places.places[i].kind}) maps to place {j} "
                f"({places.places[j].kind}); kinds must match"
            )


def euler_characteristic_infinite(places: InfinitePlaceSet) -> int:
    """Number of infinite places, r1 + r2."""
    return len(places.places)


def arithmetic_lefschetz(places: InfinitePlaceSet, action: AutomorphismAction) -> int:
    """Sum of eps_x over fixed places; eps_x = +1 in dimension zero."""
    _check_kinds(places, action)
    return sum(1 for i, j in enumerate(action.permutation) if i == j)


@dataclass(frozen=True)
class FixedPointDatum:
    local_trace: float
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (-1, 1):
            raise DomainError(f"epsilon must be +-1, got {self.epsilon}")


def dynamical_lefschetz(fixed_points: Iterable[FixedPointDatum]) -> float:
    """Sum of local_trace * epsilon over fixed points; empty sum is 0."""
    return float(sum(d.local_trace * d.epsilon for d in fixed_points))


def compact_support_vanishing_check(
    orbit_only: bool, fixed_points: Iterable[FixedPointDatum] = ()
) -> float:
    """For orbit-only systems the fixed-point sum is empty, hence 0."""
    data = tuple(fixed_points)
    if orbit_only:
        if data:
            raise DomainError("orbit-only system cannot carry fixed-point data")
        return dynamical_lefschetz(data)
    return dynamical_lefschetz(data)


# ---------------------------------------------------------------------------
# place/action files


def load_places_action(path) -> tuple[InfinitePlaceSet, AutomorphismAction]:
    """Header line "r1 r2", then optionally one line of permutation indices."""
    lines = []
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append((lineno, line))
    if not lines:
        raise ParseError("empty places file", line_number=0)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected header 'r1 r2', got {header!r}", line_number=lineno)
    try:
        r1, r2 = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"non-integer signature {header!r}", line_number=lineno) from exc
    places = InfinitePlaceSet.from_signature(r1, r2)
    if len(lines) == 1:
        return places, AutomorphismAction.identity(r1 + r2)
    if len(lines) > 2:
        raise ParseError("expected at most two data lines", line_number=lines[2][0])
    lineno, perm_line = lines[1]
    try:
        perm = [int(x) for x in perm_line.split()]
    except ValueError as exc:
        raise ParseError(f"non-integer permutation {perm_line!r}", line_number=lineno) from exc
    if len(perm) != r1 + r2:
        raise ParseError(
            f"permutation length {len(perm)} does not match {r1 + r2} places", line_number=lineno
        )
    action = AutomorphismAction.from_permutation(perm)
    _check_kinds(places, action)
    return places, action


def save_places_action(path, places: InfinitePlaceSet, action: AutomorphismAction) -> None:
    with open(path, "w") as handle:
        handle.write("# r1 r2, then the place permutation\n")
        handle.write(f"{places.r1} {places.r2}\n")
        handle.write(" ".join(str(i) for i in action.permutation) + "\n")
