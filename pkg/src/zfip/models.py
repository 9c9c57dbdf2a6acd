"""Integer programs for zero forcing parameters, forts and fort packings.

Every builder returns a :class:`~zfip.milp.LinearModel` whose ``meta`` dict
records the model kind, variant, horizon, source graph and the index maps
of its variables.  Extractors turn solutions back into combinatorial
objects and validate them with :mod:`zfip.forcing` before returning.

Models
------
IM    infection model: per-vertex forcing times ``x_v`` tied together by
      big-M rows with coefficient ``T + 1``.
TSM   time step model: ``x[v,t]`` says ``v`` is filled by step ``t``; the
      completeness rows force every available force to happen, so the
      game is synchronous and ``sum_t z[t]`` is its propagation time.
FC    fort cover: one ``>= 1`` row per fort.
MF    minimum fort avoiding a given vertex set.
LMF   minimum ``s``-weight fort (separation for the fractional cover).
MFF   minimum fort that contains none of a given list of forts.
FN    up to ``n`` disjoint copies of the fort region; maximizes the number
      of nonempty copies.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from . import forcing
from .forcing import FortCollection, ForcingTrace
from .graph import Graph, encode_graph6, GRAPH6_MAX_ORDER
from .milp import EQ, GE, LE, LinearModel, ModelError, Solution

IM_VARIANTS = ("Z", "pt", "th")
TSM_VARIANTS = ("Z", "pt", "PT", "th")


class ExtractionError(RuntimeError):
    """A solver assignment did not map to a valid combinatorial object."""


@dataclass(frozen=True)
class ImVariables:
    T: int
    s: dict
    x: dict
    y: dict  # arc (u, v) -> index
    z: int


@dataclass(frozen=True)
class TsmVariables:
    T: int
    x: dict  # (v, t) -> index, t = 0..T
    y: dict  # (u, v, t) -> index, t = 1..T
    z: dict  # t -> index


@dataclass(frozen=True)
class FnVariables:
    x: dict  # (i, v) -> index, copies i = 0..n-1
    z: dict


@dataclass(frozen=True)
class VertexVariables:
    """One variable per vertex (``s`` for covers, ``x`` for fort models)."""

    v: dict


def graph_id(g: Graph) -> str:
    if g.n <= GRAPH6_MAX_ORDER:
        key = encode_graph6(g)
    else:
        key = f"{g.n}:{g.edges()}"
    return hashlib.sha256(key.encode()).hexdigest()[:12]


def default_horizon(g: Graph) -> int:
    return max(g.n - 1, 1)


def _check_graph(g: Graph) -> None:
    if g.n == 0:
        raise ModelError("graph has no vertices")


def _horizon(g: Graph, T) -> int:
    T = default_horizon(g) if T is None else T
    if T < 1:
        raise ModelError(f"horizon T must be >= 1, got {T}")
    return T


def _name(kind, g, T=None, variant=None, extra=None) -> str:
    parts = [kind]
    if variant:
        parts.append(variant)
    if T is not None:
        parts.append(f"T{T}")
    if extra:
        parts.append(extra)
    parts.append(graph_id(g))
    return "-".join(parts)


# ---------------------------------------------------------------- IM

def build_im(g: Graph, T: int | None = None, variant: str = "Z") -> LinearModel:
    _check_graph(g)
    if variant == "PT":
        raise ModelError("the infection model cannot express PT: its feasible games may delay "
                         "available forces, so maximizing time is meaningless; use TSM")
    if variant not in IM_VARIANTS:
        raise ModelError(f"IM variant must be one of {IM_VARIANTS}, got {variant!r}")
    T = _horizon(g, T)
    m = LinearModel(_name("IM", g, T, variant))
    s = {v: m.add_binary(f"s_{v}") for v in range(g.n)}
    x = {v: m.add_var(f"x_{v}", 0, T, integer=True) for v in range(g.n)}
    arcs = g.arcs()
    y = {a: m.add_binary(f"y_{a[0]}_{a[1]}") for a in arcs}
    z = m.add_var("z", 0, T, integer=True)
    into = {v: [] for v in range(g.n)}
    for a in arcs:
        into[a[1]].append(y[a])
    for v in range(g.n):
        m.add_constraint([(s[v], 1)] + [(k, 1) for k in into[v]], EQ, 1, f"one_{v}")
    for u, v in arcs:
        m.add_constraint({x[u]: 1, x[v]: -1, y[u, v]: T + 1}, LE, T, f"time_{u}_{v}")
    for u, v in arcs:
        for w in sorted(g.neighbors(u) - {v}):
            m.add_constraint({x[w]: 1, x[v]: -1, y[u, v]: T + 1}, LE, T, f"nbr_{u}_{v}_{w}")
    for v in range(g.n):
        m.add_constraint({x[v]: 1, z: -1}, LE, 0, f"zb_{v}")
    obj = {s[v]: 1 for v in range(g.n)}
    if variant == "pt":
        obj[z] = Fraction(1, 2 * T)
    elif variant == "th":
        obj[z] = 1
    m.set_objective(obj)
    m.meta.update(kind="IM", variant=variant, T=T, graph=g, vars=ImVariables(T, s, x, y, z))
    return m


# ---------------------------------------------------------------- TSM

def build_tsm(g: Graph, T: int | None = None, variant: str = "Z") -> LinearModel:
    _check_graph(g)
    if variant not in TSM_VARIANTS:
        raise ModelError(f"TSM variant must be one of {TSM_VARIANTS}, got {variant!r}")
    T = _horizon(g, T)
    n = g.n
    m = LinearModel(_name("TSM", g, T, variant))
    x = {(v, t): m.add_binary(f"x_{v}_{t}") for t in range(T + 1) for v in range(n)}
    arcs = g.arcs()
    y = {(u, v, t): m.add_binary(f"y_{u}_{v}_{t}") for t in range(1, T + 1) for u, v in arcs}
    z = {t: m.add_binary(f"z_{t}") for t in range(1, T + 1)}
    into = {v: [u for u in sorted(g.neighbors(v))] for v in range(n)}
    for v in range(n):
        row = [(x[v, 0], 1)] + [(y[u, v, t], 1) for t in range(1, T + 1) for u in into[v]]
        m.add_constraint(row, EQ, 1, f"one_{v}")
    for t in range(1, T + 1):
        for u, v in arcs:
            m.add_constraint({y[u, v, t]: 1, x[u, t - 1]: -1}, LE, 0, f"pre_{u}_{v}_{t}")
        for u, v in arcs:
            for w in sorted(g.neighbors(u) - {v}):
                m.add_constraint({y[u, v, t]: 1, x[w, t - 1]: -1}, LE, 0, f"pren_{u}_{v}_{w}_{t}")
        for v in range(n):
            row = [(x[v, t], 1), (x[v, t - 1], -1)] + [(y[u, v, t], -1) for u in into[v]]
            m.add_constraint(row, EQ, 0, f"fill_{v}_{t}")
        for u, v in arcs:
            row = [(x[u, t - 1], 1), (x[v, t - 1], -1)]
            row += [(x[w, t - 1], 1) for w in sorted(g.neighbors(u) - {v})]
            row += [(y[w, v, t], -1) for w in into[v]]
            m.add_constraint(row, LE, g.degree(u) - 1, f"all_{u}_{v}_{t}")
        inv = Fraction(1, n)
        row = [(x[v, t], inv) for v in range(n)] + [(x[v, t - 1], -inv) for v in range(n)] + [(z[t], -1)]
        m.add_constraint(row, LE, 0, f"act_{t}")
        row = [(z[t], 1)] + [(x[v, t], -1) for v in range(n)] + [(x[v, t - 1], 1) for v in range(n)]
        m.add_constraint(row, LE, 0, f"step_{t}")
    obj = {x[v, 0]: 1 for v in range(n)}
    coef = {"Z": 0, "pt": Fraction(1, 2 * T), "PT": Fraction(-1, 2 * T), "th": 1}[variant]
    if coef:
        for t in z:
            obj[z[t]] = coef
    m.set_objective(obj)
    m.meta.update(kind="TSM", variant=variant, T=T, graph=g, vars=TsmVariables(T, x, y, z))
    return m


def build_tsm_pti(g: Graph, T: int | None, k: int) -> LinearModel:
    """TSM with the ``pt`` objective and the extra row ``sum_t z[t] >= k``."""
    T = _horizon(g, T)
    if not 0 <= k <= T:
        raise ModelError(f"PTI lower bound k must lie in [0, {T}], got {k}")
    m = build_tsm(g, T, "pt")
    tv = m.meta["vars"]
    m.add_constraint({tv.z[t]: 1 for t in tv.z}, GE, k, "pti")
    m.name = _name("TSM", g, T, "pti", f"k{k}")
    m.meta.update(variant="pti", k=k)
    return m


# ---------------------------------------------------------------- forts

def _fort_rows(m: LinearModel, g: Graph, x: dict, tag: str = "") -> None:
    for v in range(g.n):
        for u in sorted(g.neighbors(v)):
            row = {x[u]: 1, x[v]: -1}
            for w in g.neighbors(u) - {v}:
                row[x[w]] = 1
            m.add_constraint(row, GE, 0, f"fort{tag}_{v}_{u}")


def build_fort_cover(g: Graph, forts, relaxed: bool = False) -> LinearModel:
    _check_graph(g)
    forts = list(forts)
    for f in forts:
        if not forcing.is_fort(g, f):
            raise ModelError(f"{sorted(f)} is not a fort of the graph")
    m = LinearModel(_name("LFC" if relaxed else "FC", g, extra=f"f{len(forts)}"))
    s = {v: m.add_var(f"s_{v}", 0, 1, integer=not relaxed) for v in range(g.n)}
    for k, f in enumerate(forts):
        m.add_constraint({s[v]: 1 for v in sorted(f)}, GE, 1, f"cover_{k}")
    m.set_objective({s[v]: 1 for v in range(g.n)})
    m.meta.update(kind="LFC" if relaxed else "FC", graph=g, forts=tuple(frozenset(f) for f in forts),
                  vars=VertexVariables(s))
    return m


def _fort_region(kind: str, g: Graph, extra=None) -> tuple[LinearModel, dict]:
    _check_graph(g)
    m = LinearModel(_name(kind, g, extra=extra))
    x = {v: m.add_binary(f"x_{v}") for v in range(g.n)}
    m.add_constraint({x[v]: 1 for v in range(g.n)}, GE, 1, "nonempty")
    _fort_rows(m, g, x)
    return m, x


def build_min_fort(g: Graph, c, closure_fix: bool = False) -> LinearModel:
    """Minimum fort disjoint from ``c`` (or from ``cl(c)`` with ``closure_fix``)."""
    c = frozenset(c)
    m, x = _fort_region("MF", g, "cl" if closure_fix else None)
    fixed = forcing.closure(g, c).closure if closure_fix else c
    for v in sorted(fixed):
        m.add_constraint({x[v]: 1}, EQ, 0, f"fix_{v}")
    m.set_objective({x[v]: 1 for v in range(g.n)})
    m.meta.update(kind="MF", graph=g, c=c, closure_fix=closure_fix, vars=VertexVariables(x))
    return m


def build_frac_min_fort(g: Graph, s) -> LinearModel:
    """Fort of minimum ``s``-weight; a fort with weight below one is a violated cover row."""
    s = [Fraction(w) for w in s]
    if len(s) != g.n:
        raise ModelError("weight vector length must equal the number of vertices")
    for w in s:
        if not 0 <= w <= 1:
            raise ModelError(f"vertex weight {w} outside [0, 1]")
    m, x = _fort_region("LMF", g)
    m.set_objective({x[v]: s[v] for v in range(g.n)})
    m.meta.update(kind="LMF", graph=g, weights=tuple(s), vars=VertexVariables(x))
    return m


def build_minimal_fort_excl(g: Graph, excl) -> LinearModel:
    """Minimum fort containing none of the forts in ``excl``."""
    excl = list(excl)
    m, x = _fort_region("MFF", g, f"e{len(excl)}")
    for k, f in enumerate(excl):
        m.add_constraint({x[v]: 1 for v in sorted(f)}, LE, len(f) - 1, f"excl_{k}")
    m.set_objective({x[v]: 1 for v in range(g.n)})
    m.meta.update(kind="MFF", graph=g, excl=tuple(frozenset(f) for f in excl), vars=VertexVariables(x))
    return m


def build_fort_number(g: Graph, symmetry_breaking: bool = False) -> LinearModel:
    _check_graph(g)
    n = g.n
    m = LinearModel(_name("FN", g, extra="sym" if symmetry_breaking else None))
    x = {(i, v): m.add_binary(f"x_{i}_{v}") for i in range(n) for v in range(n)}
    z = {i: m.add_binary(f"z_{i}") for i in range(n)}
    for i in range(n):
        row = [(z[i], 1)] + [(x[i, u], -1) for u in range(n)]
        m.add_constraint(row, LE, 0, f"used_{i}")
    for i in range(n):
        _fort_rows(m, g, {v: x[i, v] for v in range(n)}, f"{i}")
    for u in range(n):
        m.add_constraint({x[i, u]: 1 for i in range(n)}, LE, 1, f"disj_{u}")
    if symmetry_breaking:
        for i in range(n - 1):
            m.add_constraint({z[i]: 1, z[i + 1]: -1}, GE, 0, f"sym_{i}")
    m.set_objective({z[i]: 1 for i in range(n)}, "max")
    m.meta.update(kind="FN", graph=g, vars=FnVariables(x, z))
    return m


# ---------------------------------------------------------------- assignments

def _binary(val) -> int:
    if val == 0:
        return 0
    if val == 1:
        return 1
    raise ExtractionError(f"expected a 0/1 value, got {val}")


def _meta(model: LinearModel, *kinds):
    kind = model.meta.get("kind")
    if kind not in kinds:
        raise ExtractionError(f"model kind {kind!r} is not one of {kinds}")
    return model.meta


def _assignment(sol_or_values) -> list:
    if isinstance(sol_or_values, Solution):
        if sol_or_values.assignment is None:
            raise ExtractionError(f"solution has no assignment (status {sol_or_values.status})")
        return sol_or_values.assignment
    return list(sol_or_values)


def im_assignment(model: LinearModel, trace: ForcingTrace) -> list[Fraction]:
    """IM assignment realizing a legal forcing game (``z`` = its length)."""
    meta = _meta(model, "IM")
    iv: ImVariables = meta["vars"]
    g = meta["graph"]
    trace.check(g)
    if not trace.is_complete or trace.propagation_time > iv.T:
        raise ModelError("trace must fill every vertex within the horizon")
    x = [Fraction(0)] * model.num_vars
    for v in trace.initial:
        x[iv.s[v]] = Fraction(1)
    for v, t in enumerate(trace.filled_at):
        x[iv.x[v]] = Fraction(t)
    for u, v in trace.forces:
        x[iv.y[u, v]] = Fraction(1)
    x[iv.z] = Fraction(trace.propagation_time)
    return x


def tsm_assignment(model: LinearModel, c) -> list[Fraction]:
    """TSM assignment of the synchronous game started from ``c``."""
    meta = _meta(model, "TSM")
    tv: TsmVariables = meta["vars"]
    g = meta["graph"]
    trace = forcing.closure(g, c)
    if not trace.is_complete or trace.propagation_time > tv.T:
        raise ModelError("set must be a zero forcing set finishing within the horizon")
    x = [Fraction(0)] * model.num_vars
    for v, ft in enumerate(trace.filled_at):
        for t in range(ft, tv.T + 1):
            x[tv.x[v, t]] = Fraction(1)
    for t, step in enumerate(trace.steps, start=1):
        for u, v in step:
            x[tv.y[u, v, t]] = Fraction(1)
        x[tv.z[t]] = Fraction(1)
    return x


def vertex_assignment(model: LinearModel, vertices) -> list[Fraction]:
    """Indicator assignment for FC/MF/LMF/MFF models."""
    meta = _meta(model, "FC", "LFC", "MF", "LMF", "MFF")
    vv: VertexVariables = meta["vars"]
    x = [Fraction(0)] * model.num_vars
    for v in vertices:
        x[vv.v[v]] = Fraction(1)
    return x


def fn_assignment(model: LinearModel, forts) -> list[Fraction]:
    meta = _meta(model, "FN")
    fv: FnVariables = meta["vars"]
    x = [Fraction(0)] * model.num_vars
    for i, f in enumerate(forts):
        x[fv.z[i]] = Fraction(1)
        for v in f:
            x[fv.x[i, v]] = Fraction(1)
    return x


def im_to_tsm(im_model: LinearModel, values, tsm_model: LinearModel) -> list[Fraction]:
    """Time-indexed form of an IM assignment: ``x[v,t] = 1`` iff ``x_v <= t``."""
    iv: ImVariables = _meta(im_model, "IM")["vars"]
    tv: TsmVariables = _meta(tsm_model, "TSM")["vars"]
    a = _assignment(values)
    x = [Fraction(0)] * tsm_model.num_vars
    times = {v: int(a[iv.x[v]]) for v in iv.x}
    for (v, t), j in tv.x.items():
        x[j] = Fraction(1 if times[v] <= t else 0)
    for (u, v, t), j in tv.y.items():
        x[j] = Fraction(1 if a[iv.y[u, v]] == 1 and times[v] == t else 0)
    for t, j in tv.z.items():
        x[j] = Fraction(1 if any(times[v] == t and a[iv.s[v]] == 0 for v in times) else 0)
    return x


def tsm_to_im(tsm_model: LinearModel, values, im_model: LinearModel) -> list[Fraction]:
    """IM form of a TSM assignment: ``x_v`` is the step at which ``v`` fills."""
    tv: TsmVariables = _meta(tsm_model, "TSM")["vars"]
    iv: ImVariables = _meta(im_model, "IM")["vars"]
    a = _assignment(values)
    x = [Fraction(0)] * im_model.num_vars
    for v in iv.s:
        x[iv.s[v]] = a[tv.x[v, 0]]
        filled = [t for t in range(tv.T + 1) if a[tv.x[v, t]] == 1]
        x[iv.x[v]] = Fraction(min(filled)) if filled else Fraction(tv.T)
    for (u, v), j in iv.y.items():
        x[j] = sum((a[tv.y[u, v, t]] for t in range(1, tv.T + 1)), Fraction(0))
    x[iv.z] = max((x[iv.x[v]] for v in iv.x), default=Fraction(0))
    return x


# ---------------------------------------------------------------- extractors

def extract_zfs(solution, model: LinearModel) -> frozenset[int]:
    """Initial set from an IM, TSM or FC solution; validated as a zero forcing set.

    FC solutions over a partial fort list may not be zero forcing sets; use
    :func:`extract_cover` for those.
    """
    meta = _meta(model, "IM", "TSM", "FC")
    a = _assignment(solution)
    g = meta["graph"]
    if meta["kind"] == "TSM":
        tv: TsmVariables = meta["vars"]
        c = frozenset(v for v in range(g.n) if _binary(a[tv.x[v, 0]]))
    else:
        idx = meta["vars"].s if meta["kind"] == "IM" else meta["vars"].v
        c = frozenset(v for v in range(g.n) if _binary(a[idx[v]]))
    if not forcing.is_zfs(g, c):
        raise ExtractionError(f"extracted set {sorted(c)} is not a zero forcing set")
    return c


def extract_cover(solution, model: LinearModel) -> frozenset[int]:
    """Support of an FC solution (a candidate set; not necessarily a ZFS)."""
    meta = _meta(model, "FC")
    a = _assignment(solution)
    vv: VertexVariables = meta["vars"]
    c = frozenset(v for v in vv.v if _binary(a[vv.v[v]]))
    for f in meta["forts"]:
        if not c & f:
            raise ExtractionError(f"cover misses fort {sorted(f)}")
    return c


def extract_trace(solution, model: LinearModel) -> ForcingTrace:
    """Forcing game encoded by an IM or TSM solution, validated move by move.

    IM solutions may leave time steps without forces; those are squeezed
    out, which preserves the order of all forces.
    """
    meta = _meta(model, "IM", "TSM")
    a = _assignment(solution)
    g: Graph = meta["graph"]
    forces = []  # (time, u, v)
    if meta["kind"] == "IM":
        iv: ImVariables = meta["vars"]
        initial = frozenset(v for v in range(g.n) if _binary(a[iv.s[v]]))
        for (u, v), j in iv.y.items():
            if _binary(a[j]):
                forces.append((int(a[iv.x[v]]), u, v))
    else:
        tv: TsmVariables = meta["vars"]
        initial = frozenset(v for v in range(g.n) if _binary(a[tv.x[v, 0]]))
        for (u, v, t), j in tv.y.items():
            if _binary(a[j]):
                forces.append((t, u, v))
    times = sorted({t for t, _, _ in forces})
    rank = {t: k + 1 for k, t in enumerate(times)}
    steps = [[] for _ in times]
    filled_at: list[int | None] = [None] * g.n
    for v in initial:
        filled_at[v] = 0
    for t, u, v in forces:
        steps[rank[t] - 1].append((u, v))
        if filled_at[v] is not None:
            raise ExtractionError(f"vertex {v} filled twice")
        filled_at[v] = rank[t]
    trace = ForcingTrace(initial, tuple(tuple(sorted(s, key=lambda f: f[1])) for s in steps), tuple(filled_at))
    try:
        trace.check(g)
    except ValueError as exc:
        raise ExtractionError(f"solution does not encode a legal forcing game: {exc}") from None
    if not trace.is_complete:
        raise ExtractionError("solution leaves vertices unfilled")
    return trace


def extract_fort(solution, model: LinearModel) -> frozenset[int]:
    meta = _meta(model, "MF", "LMF", "MFF")
    a = _assignment(solution)
    vv: VertexVariables = meta["vars"]
    f = frozenset(v for v in vv.v if _binary(a[vv.v[v]]))
    g = meta["graph"]
    if not forcing.is_fort(g, f):
        raise ExtractionError(f"extracted set {sorted(f)} is not a fort")
    if meta["kind"] == "MF" and f & meta["c"]:
        raise ExtractionError("extracted fort meets the fixed set")
    if meta["kind"] == "MFF":
        for e in meta["excl"]:
            if e <= f:
                raise ExtractionError(f"extracted fort contains excluded fort {sorted(e)}")
    return f


def extract_packing(solution, model: LinearModel) -> FortCollection:
    """Disjoint forts from an FN solution (the nonempty copies)."""
    meta = _meta(model, "FN")
    a = _assignment(solution)
    fv: FnVariables = meta["vars"]
    g = meta["graph"]
    forts = []
    for i in range(g.n):
        f = frozenset(v for v in range(g.n) if _binary(a[fv.x[i, v]]))
        if f:
            forts.append(f)
    seen: set[int] = set()
    for f in forts:
        if not forcing.is_fort(g, f):
            raise ExtractionError(f"copy {sorted(f)} is not a fort")
        if seen & f:
            raise ExtractionError("copies are not disjoint")
        seen |= f
    count = sum(_binary(a[fv.z[i]]) for i in range(g.n))
    if count > len(forts):
        raise ExtractionError("more active copies than nonempty forts")
    return FortCollection(tuple(sorted(forts, key=lambda f: (len(f), sorted(f)))), all_minimal=False)
