"""Zero forcing game simulation, the fort predicate and exhaustive oracles.

Everything here is combinatorial ground truth: the integer programs in
:mod:`zfip.models` are validated against these functions.  Vertex sets are
handled internally as bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Graph

ORACLE_CAP = 16
THROTTLING_CAP = 12


class OracleCapExceeded(ValueError):
    """The graph is too large for exhaustive enumeration."""


def to_mask(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


@dataclass(frozen=True)
class ForcingTrace:
    """Record of a synchronous zero forcing game.

    ``steps[t-1]`` lists the forces ``(u, v)`` applied at time step ``t``;
    ``filled_at[v]`` is 0 for initial vertices, the step at which ``v`` was
    forced, or ``None`` if ``v`` is never filled.
    """

    initial: frozenset[int]
    steps: tuple[tuple[tuple[int, int], ...], ...]
    filled_at: tuple[int | None, ...]

    @property
    def closure(self) -> frozenset[int]:
        return frozenset(v for v, t in enumerate(self.filled_at) if t is not None)

    @property
    def is_complete(self) -> bool:
        return all(t is not None for t in self.filled_at)

    @property
    def forces(self) -> list[tuple[int, int]]:
        return [f for step in self.steps for f in step]

    @property
    def propagation_time(self) -> int | None:
        return len(self.steps) if self.is_complete else None

    def check(self, g: Graph) -> None:
        """Raise ``ValueError`` unless this is a legal forcing game on ``g``."""
        if len(self.filled_at) != g.n:
            raise ValueError("filled_at length does not match graph order")
        seen = set(self.initial)
        for v in self.initial:
            if self.filled_at[v] != 0:
                raise ValueError(f"initial vertex {v} must have filled_at 0")
        for t, step in enumerate(self.steps, start=1):
            if not step:
                raise ValueError(f"step {t} is empty")
            for u, v in step:
                if v in seen:
                    raise ValueError(f"vertex {v} forced twice")
                seen.add(v)
                if not g.has_edge(u, v):
                    raise ValueError(f"force {u}->{v} is not along an edge")
                if self.filled_at[v] != t:
                    raise ValueError(f"filled_at[{v}] != {t}")
                for w in (u, *(g.neighbors(u) - {v})):
                    fw = self.filled_at[w]
                    if fw is None or fw > t - 1:
                        raise ValueError(f"force {u}->{v} at step {t} uses unfilled vertex {w}")
        for v, t in enumerate(self.filled_at):
            if (t is not None) != (v in seen):
                raise ValueError(f"filled_at[{v}] inconsistent with forces")


def closure(g: Graph, c) -> ForcingTrace:
    """Run the standard color change rule synchronously from ``c``.

    At each step every white vertex that is the unique white neighbor of
    some gray vertex is forced; the smallest-index such gray vertex is
    recorded as the forcer.
    """
    c = frozenset(c)
    for v in c:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    masks = g.masks
    filled = to_mask(c)
    filled_at: list[int | None] = [None] * g.n
    for v in c:
        filled_at[v] = 0
    steps = []
    t = 0
    while True:
        t += 1
        step = []
        newly = 0
        rest = filled
        u = 0
        while rest:
            if rest & 1:
                white = masks[u] & ~filled
                if white and not white & (white - 1) and not white & newly:
                    v = white.bit_length() - 1
                    step.append((u, v))
                    newly |= white
            rest >>= 1
            u += 1
        if not step:
            break
        step.sort(key=lambda f: f[1])
        for _, v in step:
            filled_at[v] = t
        filled |= newly
        steps.append(tuple(step))
    return ForcingTrace(c, tuple(steps), tuple(filled_at))


def closure_mask(g: Graph, filled: int) -> tuple[int, int]:
    """Bitmask closure; returns ``(closure mask, number of steps)``."""
    masks = g.masks
    steps = 0
    while True:
        newly = 0
        rest = filled
        u = 0
        while rest:
            if rest & 1:
                white = masks[u] & ~filled
                if white and not white & (white - 1):
                    newly |= white
            rest >>= 1
            u += 1
        if not newly:
            return filled, steps
        filled |= newly
        steps += 1


def is_zfs(g: Graph, c) -> bool:
    full = (1 << g.n) - 1
    return closure_mask(g, to_mask(c))[0] == full


def propagation_time(g: Graph, c) -> int | None:
    """Synchronous propagation time, or ``None`` if ``c`` is not a ZFS."""
    full = (1 << g.n) - 1
    cl, steps = closure_mask(g, to_mask(c))
    return steps if cl == full else None


def is_fort_mask(g: Graph, f: int) -> bool:
    if not f:
        return False
    masks = g.masks
    outside = ((1 << g.n) - 1) & ~f
    u = 0
    while outside:
        if outside & 1:
            hit = masks[u] & f
            if hit and not hit & (hit - 1):
                return False
        outside >>= 1
        u += 1
    return True


def is_fort(g: Graph, f) -> bool:
    return is_fort_mask(g, to_mask(f))


def largest_fort_within(g: Graph, s) -> frozenset[int]:
    """Union of all forts inside ``s`` (empty if there is none).

    Gray everything outside ``s`` and force to closure; whatever stays
    white is a fort, and no fort inside ``s`` can be forced.
    """
    full = (1 << g.n) - 1
    cl, _ = closure_mask(g, full & ~to_mask(s))
    return from_mask(full & ~cl)


def is_minimal_fort(g: Graph, f) -> bool:
    f = frozenset(f)
    return is_fort(g, f) and not any(largest_fort_within(g, f - {v}) for v in f)


def shrink_to_minimal_fort(g: Graph, f) -> frozenset[int]:
    """A minimal fort contained in the fort ``f``."""
    f = frozenset(f)
    if not is_fort(g, f):
        raise ValueError(f"{sorted(f)} is not a fort")
    for v in sorted(f):
        if v in f:
            inner = largest_fort_within(g, f - {v})
            if inner:
                f = inner
    return f


@dataclass(frozen=True)
class FortCollection:
    """A list of forts; ``complete`` is False when enumeration was cut short."""

    forts: tuple[frozenset[int], ...]
    all_minimal: bool = True
    complete: bool = True
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.forts)

    def __iter__(self):
        return iter(self.forts)

    def as_set(self) -> set[frozenset[int]]:
        return set(self.forts)

    def check(self, g: Graph) -> None:
        for f in self.forts:
            if not is_fort(g, f):
                raise ValueError(f"{sorted(f)} is not a fort")
        if self.all_minimal:
            for a, b in itertools.permutations(self.forts, 2):
                if a < b:
                    raise ValueError(f"{sorted(a)} is a proper subset of {sorted(b)}")


def _cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise OracleCapExceeded(f"n={g.n} exceeds oracle cap {cap}")
    if g.n == 0:
        raise ValueError("graph has no vertices")


def _subsets(n: int, k: int):
    for combo in itertools.combinations(range(n), k):
        yield combo, to_mask(combo)


def oracle_Z(g: Graph, cap: int = ORACLE_CAP) -> tuple[int, frozenset[int]]:
    """Zero forcing number and the lexicographically first minimum ZFS."""
    _cap(g, cap)
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for combo, mask in _subsets(g.n, k):
            if closure_mask(g, mask)[0] == full:
                return k, frozenset(combo)
    raise AssertionError("V is always a zero forcing set")


def minimum_zfs_all(g: Graph, cap: int = ORACLE_CAP) -> list[frozenset[int]]:
    """Every minimum zero forcing set, in lexicographic order."""
    z, _ = oracle_Z(g, cap)
    full = (1 << g.n) - 1
    return [frozenset(combo) for combo, mask in _subsets(g.n, z) if closure_mask(g, mask)[0] == full]


def oracle_pt_PT(g: Graph, cap: int = ORACLE_CAP) -> tuple[int, int, tuple[int, ...]]:
    """Minimum/maximum propagation time over minimum ZFSs and the realized set."""
    _cap(g, cap)
    times = {propagation_time(g, c) for c in minimum_zfs_all(g, cap)}
    realized = tuple(sorted(times))
    return realized[0], realized[-1], realized


def oracle_th(g: Graph, cap: int = THROTTLING_CAP) -> tuple[int, frozenset[int]]:
    """Throttling number ``min |C| + pt(G, C)`` with its first witness."""
    _cap(g, cap)
    full = (1 << g.n) - 1
    best, witness = g.n, frozenset(range(g.n))
    for k in range(g.n + 1):
        if k >= best:
            break
        for combo, mask in _subsets(g.n, k):
            cl, steps = closure_mask(g, mask)
            if cl == full and k + steps < best:
                best, witness = k + steps, frozenset(combo)
    return best, witness


def all_forts_masks(g: Graph, cap: int = ORACLE_CAP) -> list[int]:
    _cap(g, cap)
    return [f for f in range(1, 1 << g.n) if is_fort_mask(g, f)]


def oracle_minimal_forts(g: Graph, cap: int = ORACLE_CAP) -> FortCollection:
    """All inclusion-minimal forts, ordered by size then lexicographically."""
    forts = all_forts_masks(g, cap)
    forts.sort(key=lambda f: (bin(f).count("1"), sorted(from_mask(f))))
    minimal: list[int] = []
    for f in forts:
        if not any(m & f == m for m in minimal):
            minimal.append(f)
    return FortCollection(tuple(from_mask(f) for f in minimal), all_minimal=True)


def max_disjoint_packing(sets: list[int]) -> list[int]:
    """Maximum number of pairwise disjoint bitmask sets (exhaustive search)."""
    sets = sorted(set(sets), key=lambda s: (bin(s).count("1"), s))
    if not sets:
        return []
    smallest = bin(sets[0]).count("1")
    best: list[int] = []

    def search(start, used, chosen, free_count):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + free_count // smallest <= len(best):
            return
        for i in range(start, len(sets)):
            s = sets[i]
            if s & used:
                continue
            chosen.append(s)
            search(i + 1, used | s, chosen, free_count - bin(s).count("1"))
            chosen.pop()

    universe = 0
    for s in sets:
        universe |= s
    search(0, 0, [], bin(universe).count("1"))
    return best


def oracle_ft(g: Graph, cap: int = ORACLE_CAP) -> tuple[int, list[frozenset[int]]]:
    """Fort number by maximum set packing over the minimal forts."""
    forts = oracle_minimal_forts(g, cap)
    packing = max_disjoint_packing([to_mask(f) for f in forts])
    return len(packing), [from_mask(p) for p in packing]


def greedy_zfs(g: Graph) -> frozenset[int]:
    """A minimal (not necessarily minimum) ZFS: drop vertices while possible."""
    full = (1 << g.n) - 1
    cur = full
    for v in range(g.n):
        trial = cur & ~(1 << v)
        if closure_mask(g, trial)[0] == full:
            cur = trial
    return from_mask(cur)
