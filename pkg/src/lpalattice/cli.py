"""Command-line front end: graph parsing, command dispatch, stable output.

Exit codes: 0 success, 1 domain error, 2 parse/usage error.  Errors print a
single machine-parsable line ``error:<kind>: <message>`` on stderr.
"""

from __future__ import annotations

import functools
import json
import re
import sys

import click

from .concrete import OracleError, crosscheck
from .graph import (
    Bundle,
    Graph,
    GraphError,
    OMEGA,
    cycle_vertex_closure,
    cycles,
    exclusive_cycles,
    exit_closure,
    find_cycle,
    hereditary_closure,
    hereditary_saturated_closure,
    pair_lattice,
    saturated_closure,
)
from .ideals import (
    ClassificationError,
    CyclePoly,
    ClassifiedIdeal,
    ScaledBreaking,
    ScaledVertex,
    context,
    from_generators,
    graded_lattice,
    prime_report,
    to_generators,
    validate_tables,
)
from .laurent import LaurentIdeal, parse_poly
from .rings import RingError, RingIdeal, parse_ring


class ParseFailure(ValueError):
    pass


# -- graph text format -------------------------------------------------------

_VERTICES_RE = re.compile(r"vertices\s+([A-Za-z0-9_]+(?:\s*,\s*[A-Za-z0-9_]+)*)")
_EDGE_RE = re.compile(r"edge\s+([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)")
_BUNDLE_RE = re.compile(
    r"bundle\s+([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)\s*\*\s*(\d+|inf)"
)


def _statements(text: str):
    """Semicolon-terminated statements with their (line, col) positions."""
    line, col = 1, 1
    buf = []
    start = None
    in_comment = False
    for ch in text:
        if ch == "\n":
            in_comment = False
        if not in_comment:
            if ch == "#":
                in_comment = True
            elif ch == ";":
                stmt = "".join(buf).strip()
                if stmt:
                    yield stmt, start
                buf, start = [], None
            elif not ch.isspace():
                if start is None:
                    start = (line, col)
                buf.append(ch)
            elif buf:
                buf.append(" ")
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    tail = "".join(buf).strip()
    if tail:
        raise ParseFailure(f"line {start[0]}, col {start[1]}: missing ';' after {tail!r}")


def parse_graph(text: str) -> Graph:
    vertices = []
    bundles = []
    for stmt, (line, col) in _statements(text):
        where = f"line {line}, col {col}"
        m = _VERTICES_RE.fullmatch(stmt)
        if m:
            for vid in (s.strip() for s in m.group(1).split(",")):
                if vid in vertices:
                    raise ParseFailure(f"{where}: duplicate vertex id {vid!r}")
                vertices.append(vid)
            continue
        m = _EDGE_RE.fullmatch(stmt)
        if m:
            bundles.append(Bundle(m.group(1), m.group(2), m.group(3), 1))
            continue
        m = _BUNDLE_RE.fullmatch(stmt)
        if m:
            mult = OMEGA if m.group(4) == "inf" else int(m.group(4))
            bundles.append(Bundle(m.group(1), m.group(2), m.group(3), mult))
            continue
        raise ParseFailure(f"{where}: cannot parse statement {stmt!r}")
    try:
        return Graph(vertices, bundles)
    except GraphError as exc:
        raise ParseFailure(str(exc)) from exc


def format_graph(g: Graph) -> str:
    lines = []
    if g.vertices:
        lines.append("vertices " + ",".join(sorted(g.vertices)) + ";")
    for b in g.bundles:
        if b.multiplicity == 1:
            lines.append(f"edge {b.name}: {b.source}->{b.target};")
        else:
            mult = "inf" if b.is_infinite else str(b.multiplicity)
            lines.append(f"bundle {b.name}: {b.source}->{b.target} * {mult};")
    return "\n".join(lines) + "\n"


# -- pair and generator files --------------------------------------------------


def _parse_ring_ideal(ring, text: str) -> RingIdeal:
    text = text.strip()
    m = re.fullmatch(r"\((-?\d+)\)", text)
    if not m:
        raise ParseFailure(f"bad ring ideal literal {text!r}; expected like (2)")
    return RingIdeal(ring, ring.gen_normalize(int(m.group(1))))


def load_ideal_tables(ring, text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"bad pair file: {exc}") from exc
    if not isinstance(doc, dict) or "f" not in doc:
        raise ParseFailure('pair file must be an object with an "f" table')
    try:
        f_table = {k: _parse_ring_ideal(ring, v) for k, v in doc["f"].items()}
        g_table = {
            k: LaurentIdeal.parse(ring, v) for k, v in doc.get("g", {}).items()
        }
    except RingError as exc:
        raise ParseFailure(str(exc)) from exc
    return f_table, g_table


def dump_ideal(pair: ClassifiedIdeal) -> dict:
    ctx = pair.ctx
    return {
        "ring": str(ctx.ring),
        "f": {p.label(): str(RingIdeal(ctx.ring, v)) for p, v in zip(ctx.star, pair.f.vals)},
        "g": {c.label(): str(g) for c, g in zip(ctx.cycles, pair.g)},
    }


def load_generators(ctx, text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"bad generators file: {exc}") from exc
    if not isinstance(doc, list):
        raise ParseFailure("generators file must be a list")
    atoms = []
    for item in doc:
        kind = item.get("kind")
        if kind == "vertex":
            atoms.append(ScaledVertex(ctx.ring.parse_element(str(item["r"])), item["v"]))
        elif kind == "breaking":
            atoms.append(
                ScaledBreaking(
                    ctx.ring.parse_element(str(item["r"])),
                    item["w"],
                    frozenset(item["H"]),
                )
            )
        elif kind == "cycle":
            atoms.append(
                CyclePoly(parse_poly(ctx.ring, item["p"]), find_cycle(ctx.graph, item["c"]))
            )
        else:
            raise ParseFailure(f"unknown generator kind {kind!r}")
    return atoms


def dump_generators(atoms) -> list:
    out = []
    for a in atoms:
        if isinstance(a, ScaledVertex):
            out.append({"kind": "vertex", "r": str(a.r), "v": a.v})
        elif isinstance(a, ScaledBreaking):
            out.append({"kind": "breaking", "r": str(a.r), "w": a.w, "H": sorted(a.H)})
        else:
            out.append({"kind": "cycle", "p": str(a.p), "c": a.c.label()})
    return out


# -- output helpers ------------------------------------------------------------


def _emit(payload, as_json: bool, out):
    if as_json:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif isinstance(payload, str):
        text = payload if payload.endswith("\n") else payload + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _dot(nodes, edges) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for n in nodes:
        lines.append(f'  "{n}";')
    for a, b in edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _command(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseFailure as exc:
            click.echo(f"error:parse: {exc}", err=True)
            sys.exit(2)
        except (GraphError, RingError, ClassificationError, OracleError) as exc:
            click.echo(f"error:domain: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def _ring_option(fn):
    return click.option("--ring", "ring_spec", required=True, help="Z, Q, Z/12, F7")(fn)


def _graph_option(fn):
    return click.option("--graph", "graph_file", required=True, type=click.Path(exists=True))(fn)


def _output_options(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="stable JSON output")(fn)
    fn = click.option("--out", "out", type=click.Path(), default=None)(fn)
    return fn


def _parse_ring_spec(spec):
    try:
        return parse_ring(spec)
    except RingError as exc:
        raise ParseFailure(str(exc)) from exc


def _load_pair(ctx, pair_file) -> ClassifiedIdeal:
    with open(pair_file) as fh:
        f_table, g_table = load_ideal_tables(ctx.ring, fh.read())
    result = validate_tables(ctx, f_table, g_table)
    if isinstance(result, list):
        raise ClassificationError("invalid pair: " + "; ".join(result))
    return result


@click.group()
def main():
    """Exact ideal-lattice computations for Leavitt path algebras."""


@main.command()
@_graph_option
@_output_options
@click.option("--saturated", is_flag=True, help="also close under saturation")
@click.argument("vertices")
@_command
def closure(graph_file, as_json, out, saturated, vertices):
    """Hereditary closure of a set of vertices."""
    g = _load_graph(graph_file)
    seed = frozenset(v.strip() for v in vertices.split(",") if v.strip())
    if saturated:
        result = hereditary_saturated_closure(g, seed)
    else:
        result = hereditary_closure(g, seed)
    payload = {"closure": sorted(result)} if as_json else ",".join(sorted(result)) or "{}"
    _emit(payload, as_json, out)


@main.command()
@_graph_option
@_output_options
@click.option("--set", "base", required=True, help="hereditary vertex set, comma separated")
@click.option("--absorb", default="", help="vertices to absorb once their targets are inside")
@_command
def saturate(graph_file, as_json, out, base, absorb):
    """Saturation of a hereditary set, absorbing chosen infinite emitters."""
    g = _load_graph(graph_file)
    h = frozenset(v.strip() for v in base.split(",") if v.strip())
    s = frozenset(v.strip() for v in absorb.split(",") if v.strip())
    result = saturated_closure(g, h, s)
    payload = {"saturation": sorted(result)} if as_json else ",".join(sorted(result)) or "{}"
    _emit(payload, as_json, out)


@main.command()
@_graph_option
@_output_options
@click.option("--dot", "as_dot", is_flag=True, help="emit a Hasse diagram")
@_command
def pairs(graph_file, as_json, out, as_dot):
    """List the admissible pairs of a graph."""
    g = _load_graph(graph_file)
    lat = pair_lattice(g)
    if as_dot:
        _emit(_dot([p.label() for p in lat], [(a.label(), b.label()) for a, b in lat.hasse_edges()]), False, out)
        return
    labels = [p.label() for p in lat]
    _emit({"pairs": labels} if as_json else "\n".join(labels), as_json, out)


@main.command(name="cycles")
@_graph_option
@_output_options
@_command
def cycles_cmd(graph_file, as_json, out):
    """List the cycles of a graph and their closures."""
    g = _load_graph(graph_file)
    exclusive = set(exclusive_cycles(g))
    rows = []
    for c in cycles(g):
        rows.append(
            {
                "cycle": c.label(),
                "vertices": sorted(c.vertices()),
                "exclusive": c in exclusive,
                "vertex_closure": sorted(cycle_vertex_closure(g, c)),
                "exit_closure": sorted(exit_closure(g, c)),
            }
        )
    if as_json:
        _emit({"cycles": rows}, True, out)
    else:
        lines = [
            "{cycle}  exclusive={exclusive}  closure={{{vc}}}  exits={{{ec}}}".format(
                cycle=r["cycle"],
                exclusive="yes" if r["exclusive"] else "no",
                vc=",".join(r["vertex_closure"]),
                ec=",".join(r["exit_closure"]),
            )
            for r in rows
        ]
        _emit("\n".join(lines) if lines else "no cycles", False, out)


@main.command(name="lattice-op")
@_graph_option
@_ring_option
@_output_options
@click.argument("op", type=click.Choice(["meet", "join", "product"]))
@click.argument("left", type=click.Path(exists=True))
@click.argument("right", type=click.Path(exists=True))
@_command
def lattice_op(graph_file, ring_spec, as_json, out, op, left, right):
    """Meet, join, or product of two classified ideals."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    a = _load_pair(ctx, left)
    b = _load_pair(ctx, right)
    result = {"meet": a.meet, "join": a.join, "product": a.product}[op](b)
    _emit(dump_ideal(result), True, out)


@main.command()
@_graph_option
@_ring_option
@_output_options
@click.argument("pair_file", type=click.Path(exists=True))
@_command
def graded(graph_file, ring_spec, as_json, out, pair_file):
    """Whether a classified ideal is graded."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    pair = _load_pair(ctx, pair_file)
    result = pair.is_graded()
    _emit({"graded": result} if as_json else ("graded" if result else "not graded"), as_json, out)


@main.command(name="largest-graded")
@_graph_option
@_ring_option
@_output_options
@click.argument("pair_file", type=click.Path(exists=True))
@_command
def largest_graded(graph_file, ring_spec, as_json, out, pair_file):
    """The largest graded ideal inside a classified ideal."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    pair = _load_pair(ctx, pair_file)
    _emit(dump_ideal(pair.largest_graded()), True, out)


@main.command()
@_graph_option
@_ring_option
@_output_options
@click.argument("pair_file", type=click.Path(exists=True))
@_command
def prime(graph_file, ring_spec, as_json, out, pair_file):
    """Necessary conditions for a classified ideal to be prime."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    pair = _load_pair(ctx, pair_file)
    report = prime_report(pair)
    if as_json:
        _emit(
            {
                "passes": report.passes,
                "verdict": report.verdict,
                "value_failures": [
                    {"pair": label, "value": f"({gen})"} for label, gen in report.value_failures
                ],
                "directed_checks": [
                    {"value": f"({gen})", "complement": sorted(comp), "directed": ok}
                    for gen, comp, ok in report.directed_checks
                ],
            },
            True,
            out,
        )
    else:
        _emit("\n".join(report.lines()), False, out)


@main.command()
@_graph_option
@_ring_option
@_output_options
@click.argument("pair_file", type=click.Path(exists=True))
@_command
def generators(graph_file, ring_spec, as_json, out, pair_file):
    """A generating set for a classified ideal."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    pair = _load_pair(ctx, pair_file)
    _emit(dump_generators(to_generators(pair)), True, out)


@main.command(name="from-generators")
@_graph_option
@_ring_option
@_output_options
@click.argument("gens_file", type=click.Path(exists=True))
@_command
def from_generators_cmd(graph_file, ring_spec, as_json, out, gens_file):
    """The classified ideal generated by the listed elements."""
    g = _load_graph(graph_file)
    ctx = context(g, _parse_ring_spec(ring_spec))
    with open(gens_file) as fh:
        atoms = load_generators(ctx, fh.read())
    _emit(dump_ideal(from_generators(ctx, atoms)), True, out)


@main.command()
@_graph_option
@_ring_option
@_output_options
@click.option("--dot", "as_dot", is_flag=True, help="emit a Hasse diagram")
@click.option(
    "--graded",
    "graded_only",
    is_flag=True,
    help="allow graphs with exclusive cycles; lists only the graded ideals",
)
@_command
def enumerate(graph_file, ring_spec, as_json, out, as_dot, graded_only):
    """Enumerate the ideal lattice (graded ideals) over a finite ring."""
    g = _load_graph(graph_file)
    ring = _parse_ring_spec(ring_spec)
    if not ring.is_finite:
        raise RingError(
            f"cannot enumerate: {ring} has infinitely many ideals, so the lattice is infinite"
        )
    if exclusive_cycles(g) and not graded_only:
        raise GraphError(
            "cannot enumerate: the graph has exclusive cycles, so non-graded ideals "
            "form infinite families over every supported ring; pass --graded to list "
            "the graded ideals only"
        )
    fns = graded_lattice(g, ring)
    rows = [
        {p.label(): f"({v})" for p, v in zip(f.ctx.star, f.vals)} for f in fns
    ]
    if as_dot:
        names = [json.dumps(r, sort_keys=True) for r in rows]
        edges = []
        for i, a in enumerate(fns):
            for j, b in enumerate(fns):
                if i == j:
                    continue
                ring_le = all(
                    ring.gen_contains(y, x) for x, y in zip(a.vals, b.vals)
                )
                if not ring_le:
                    continue
                if any(
                    k not in (i, j)
                    and all(ring.gen_contains(y, x) for x, y in zip(a.vals, fns[k].vals))
                    and all(ring.gen_contains(y, x) for x, y in zip(fns[k].vals, b.vals))
                    for k in range(len(fns))
                ):
                    continue
                edges.append((names[i].replace('"', "'"), names[j].replace('"', "'")))
        _emit(_dot([n.replace('"', "'") for n in names], edges), False, out)
        return
    if as_json:
        _emit({"count": len(fns), "ideals": rows}, True, out)
    else:
        lines = [f"{len(fns)} ideals"] + [
            " ".join(f"{p.label()}:({v})" for p, v in zip(f.ctx.star, f.vals)) for f in fns
        ]
        _emit("\n".join(lines), False, out)


@main.command(name="crosscheck")
@_graph_option
@_ring_option
@_output_options
@_command
def crosscheck_cmd(graph_file, ring_spec, as_json, out):
    """Cross-validate the classification against the explicit algebra."""
    g = _load_graph(graph_file)
    ring = _parse_ring_spec(ring_spec)
    report = crosscheck(g, ring)
    if as_json:
        _emit(
            {
                "ok": report.ok,
                "lattice_size": report.lattice_size,
                "concrete_size": report.concrete_size,
                "mismatches": report.mismatches,
            },
            True,
            out,
        )
    else:
        _emit("\n".join(report.lines()), False, out)
    if not report.ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
