"""Fixed-format MPS and CPLEX-style LP writers, and an MPS reader.

Numbers are written as decimals that fit the 12-character MPS field.  Any
value the decimal does not represent exactly is repeated as an exact ratio
in a ``* exact`` comment, and names longer than eight characters are
replaced by stable mangled names recorded in ``* name`` comments, so
:func:`parse_mps` recovers the original model exactly.  Third-party readers
ignore the comments.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .model import EQ, GE, LE, LinearModel, ModelError

MPS_NAME_LIMIT = 8
_B36 = "0123456789abcdefghijklmnopqrstuvwxyz"
_LP_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")
_LP_RESERVED = {"free", "inf", "infinity", "st", "subject", "to", "bounds", "bound", "end", "generals",
                "general", "gen", "binaries", "binary", "bin", "minimize", "maximize", "min", "max", "obj"}


def _base36(k: int, width: int) -> str:
    out = ""
    while k:
        k, r = divmod(k, 36)
        out = _B36[r] + out
    return out.rjust(width, "0")


def _mangle(names: list[str], prefix: str, ok) -> list[str]:
    """Keep names that pass ``ok``; replace the rest by ``prefix`` + base-36 index.

    If a replacement would collide with a kept name, every name is replaced.
    """
    out = [n if ok(n) else f"{prefix}{_base36(k, MPS_NAME_LIMIT - len(prefix))}" for k, n in enumerate(names)]
    if len(set(out)) != len(out):
        out = [f"{prefix}{_base36(k, MPS_NAME_LIMIT - len(prefix))}" for k in range(len(names))]
    return out


def _mps_ok(name: str) -> bool:
    return 0 < len(name) <= MPS_NAME_LIMIT and not any(c.isspace() for c in name) and name != "OBJ" \
        and not name.startswith("*")


def _lp_ok(name: str) -> bool:
    return bool(_LP_NAME.match(name)) and name.lower() not in _LP_RESERVED


def _num(v: Fraction, width: int = 12) -> tuple[str, bool]:
    """Decimal rendering and whether it is exact."""
    if v.denominator == 1 and len(str(v.numerator)) <= width:
        return str(v.numerator), True
    f = float(v)
    for k in range(15, 0, -1):
        s = format(f, f".{k}g")
        if len(s) <= width:
            break
    return s, Fraction(s) == v


def export_mps(model: LinearModel) -> str:
    model.validate()
    cnames = _mangle([v.name for v in model.variables], "C", _mps_ok)
    rnames = _mangle([c.name for c in model.constraints], "R", _mps_ok)
    head = [f"* model {model.name}"]
    for orig, new in zip((v.name for v in model.variables), cnames):
        if orig != new:
            head.append(f"* name C {new} {orig}")
    for orig, new in zip((c.name for c in model.constraints), rnames):
        if orig != new:
            head.append(f"* name R {new} {orig}")
    exact: list[str] = []

    def field(v, *key):
        s, ok = _num(v)
        if not ok:
            exact.append("* exact " + " ".join(key) + f" {v}")
        return s

    lines = [f"NAME          {model.name}"]
    if model.sense == "max":
        lines += ["OBJSENSE", "    MAX"]
    lines.append("ROWS")
    lines.append(" N  OBJ")
    code = {LE: "L", GE: "G", EQ: "E"}
    for c, rn in zip(model.constraints, rnames):
        lines.append(f" {code[c.sense]}  {rn}")
    lines.append("COLUMNS")
    col_entries: list[list[tuple[str, Fraction]]] = [[] for _ in model.variables]
    for j, a in model.objective.items():
        col_entries[j].append(("OBJ", a))
    for c, rn in zip(model.constraints, rnames):
        for j, a in c.coeffs:
            col_entries[j].append((rn, a))
    in_int = False
    marker = 0
    for j, v in enumerate(model.variables):
        if v.integer != in_int:
            tag = "'INTORG'" if v.integer else "'INTEND'"
            lines.append(f"    M{marker:<7}  'MARKER'                 {tag}")
            marker += 1
            in_int = v.integer
        entries = col_entries[j] or [("OBJ", Fraction(0))]
        for rn, a in entries:
            lines.append(f"    {cnames[j]:<8}  {rn:<8}  {field(a, 'A', cnames[j], rn):>12}")
    if in_int:
        lines.append(f"    M{marker:<7}  'MARKER'                 'INTEND'")
    lines.append("RHS")
    for c, rn in zip(model.constraints, rnames):
        if c.rhs:
            lines.append(f"    {'RHS':<8}  {rn:<8}  {field(c.rhs, 'RHS', rn):>12}")
    lines.append("BOUNDS")
    for j, v in enumerate(model.variables):
        cn = cnames[j]
        lb, ub = v.lb, v.ub
        if v.integer and lb == 0 and ub == 1:
            lines.append(f" BV BND       {cn}")
            continue
        if lb is not None and ub is not None and lb == ub:
            lines.append(f" FX BND       {cn:<8}  {field(lb, 'FX', cn):>12}")
            continue
        if lb is None and ub is None:
            lines.append(f" FR BND       {cn}")
            continue
        if lb is None:
            lines.append(f" MI BND       {cn}")
        elif lb != 0 or (ub is not None and ub < 0):
            lines.append(f" LO BND       {cn:<8}  {field(lb, 'LO', cn):>12}")
        if ub is None:
            if v.integer:
                lines.append(f" PL BND       {cn}")
        else:
            lines.append(f" UP BND       {cn:<8}  {field(ub, 'UP', cn):>12}")
    lines.append("ENDATA")
    return "\n".join(head + exact + lines) + "\n"


def parse_mps(text: str) -> LinearModel:
    """Read fixed/free MPS as written by :func:`export_mps` (and plain MPS files)."""
    col_orig: dict[str, str] = {}
    row_orig: dict[str, str] = {}
    exact: dict[tuple, Fraction] = {}
    name = "model"
    sense = "min"
    section = None
    rows: list[tuple[str, str]] = []
    obj_row = None
    cols: dict[str, dict[str, Fraction]] = {}
    col_order: list[str] = []
    col_int: dict[str, bool] = {}
    rhs: dict[str, Fraction] = {}
    bounds: dict[str, list] = {}
    integer = False

    def val(s, *key):
        return exact.get(key, Fraction(s))

    for raw in text.splitlines():
        if raw.startswith("*"):
            parts = raw[1:].split()
            if parts[:1] == ["model"] and len(parts) > 1:
                name = raw[1:].strip()[len("model"):].strip()
            elif parts[:1] == ["name"] and len(parts) == 4:
                (col_orig if parts[1] == "C" else row_orig)[parts[2]] = parts[3]
            elif parts[:1] == ["exact"]:
                exact[tuple(parts[1:-1])] = Fraction(parts[-1])
            continue
        if not raw.strip():
            continue
        if not raw[0].isspace():
            head = raw.split()
            section = head[0]
            if section == "NAME" and len(head) > 1 and name == "model":
                name = raw[4:].strip()
            elif section == "OBJSENSE" and len(head) > 1:
                sense = "max" if head[1].upper().startswith("MAX") else "min"
            elif section not in ("NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"):
                raise ModelError(f"unknown MPS section {section!r}")
            continue
        f = raw.split()
        if section == "OBJSENSE":
            sense = "max" if f[0].upper().startswith("MAX") else "min"
        elif section == "ROWS":
            if f[0] == "N":
                if obj_row is None:
                    obj_row = f[1]
            else:
                rows.append((f[0], f[1]))
        elif section == "COLUMNS":
            if len(f) >= 3 and f[1] == "'MARKER'":
                integer = f[2] == "'INTORG'"
                continue
            cn = f[0]
            if cn not in cols:
                cols[cn] = {}
                col_order.append(cn)
                col_int[cn] = integer
            for k in range(1, len(f) - 1, 2):
                cols[cn][f[k]] = val(f[k + 1], "A", cn, f[k])
        elif section == "RHS":
            for k in range(1 if len(f) % 2 else 0, len(f) - 1, 2):
                rhs[f[k]] = val(f[k + 1], "RHS", f[k])
        elif section == "RANGES":
            raise ModelError("RANGES section is not supported")
        elif section == "BOUNDS":
            kind = f[0]
            has_value = kind in ("LO", "UP", "FX", "LI", "UI")
            # the bound-set name is optional
            cn = f[2] if len(f) >= (4 if has_value else 3) else f[1]
            b = bounds.setdefault(cn, [None, None, None])  # lo, up, free/minus-infinity mark
            if has_value:
                value = val(f[-1], {"LI": "LO", "UI": "UP"}.get(kind, kind), cn)
                if kind in ("LI", "UI"):
                    col_int[cn] = True
            if kind in ("LO", "LI"):
                b[0] = value
            elif kind in ("UP", "UI"):
                b[1] = value
            elif kind == "FX":
                b[0] = b[1] = value
            elif kind == "FR":
                b[2] = "free"
            elif kind == "MI":
                b[2] = "mi"
            elif kind == "PL":
                pass
            elif kind == "BV":
                b[0], b[1] = Fraction(0), Fraction(1)
                col_int[cn] = True
            else:
                raise ModelError(f"unsupported bound type {kind!r}")
    model = LinearModel(name)
    idx = {}
    for cn in col_order:
        lb, ub = Fraction(0), None
        integer = col_int[cn]
        b = bounds.get(cn)
        if b is not None:
            lo_b, up_b, mark = b
            if mark == "free":
                lb, ub = None, None
            if mark == "mi":
                lb = None
            if lo_b is not None:
                lb = lo_b
            if up_b is not None:
                ub = up_b
        idx[cn] = model.add_var(col_orig.get(cn, cn), lb, ub, integer)
    code = {"L": LE, "G": GE, "E": EQ}
    for kind, rn in rows:
        coeffs = {idx[cn]: a for cn in col_order for r, a in cols[cn].items() if r == rn}
        model.add_constraint(coeffs, code[kind], rhs.get(rn, 0), row_orig.get(rn, rn))
    model.set_objective({idx[cn]: cols[cn][obj_row] for cn in col_order if obj_row in cols[cn]}, sense)
    return model


def export_lp_format(model: LinearModel) -> str:
    """CPLEX-style LP text.  Non-terminating decimals are noted exactly in comments."""
    model.validate()
    cnames = _mangle([v.name for v in model.variables], "x", _lp_ok)
    rnames = _mangle([c.name for c in model.constraints], "r", _lp_ok)
    notes = []

    def num(v, where):
        s, ok = _num(v, 24)
        if not ok:
            notes.append(f"\\ exact {where} {v}")
        return s

    def expr(items, where):
        parts = []
        for j, a in items:
            s = num(abs(a), f"{where} {cnames[j]}")
            sign = "-" if a < 0 else "+"
            parts.append(f"{sign} {s} {cnames[j]}" if s != "1" else f"{sign} {cnames[j]}")
        if not parts:
            return "0 " + (cnames[0] if cnames else "")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out

    body = ["Maximize" if model.sense == "max" else "Minimize"]
    body.append(f" obj: {expr(sorted(model.objective.items()), 'obj')}")
    body.append("Subject To")
    op = {LE: "<=", GE: ">=", EQ: "="}
    for c, rn in zip(model.constraints, rnames):
        if not c.coeffs:
            continue
        body.append(f" {rn}: {expr(c.coeffs, rn)} {op[c.sense]} {num(c.rhs, rn + ' rhs')}")
    body.append("Bounds")
    for v, cn in zip(model.variables, cnames):
        if v.lb is None and v.ub is None:
            body.append(f" {cn} free")
        elif v.lb is None:
            body.append(f" -inf <= {cn} <= {num(v.ub, cn + ' ub')}")
        elif v.ub is None:
            if v.lb != 0:
                body.append(f" {cn} >= {num(v.lb, cn + ' lb')}")
        else:
            body.append(f" {num(v.lb, cn + ' lb')} <= {cn} <= {num(v.ub, cn + ' ub')}")
    gens = [cn for v, cn in zip(model.variables, cnames) if v.integer]
    if gens:
        body.append("Generals")
        for k in range(0, len(gens), 8):
            body.append(" " + " ".join(gens[k:k + 8]))
    body.append("End")
    head = [f"\\ model {model.name}"]
    head += [f"\\ name {new} {v.name}" for v, new in zip(model.variables, cnames) if new != v.name]
    return "\n".join(head + notes + body) + "\n"
