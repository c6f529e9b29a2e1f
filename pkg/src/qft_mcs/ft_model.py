"""Fault-tree data model, text format parser, and structural validation.

A fault tree is a DAG whose leaves are *basic events* (independent Bernoulli
failures with probability ``p``) and whose internal nodes are multi-input
AND/OR *gate events*, with a single distinguished TOP gate.  Trees are
coherent: no NOT gates, so the TOP outcome is monotone in the basic events.

Text format (UTF-8, line oriented, ``#`` starts a comment):

    basic <id> p=<float>            one line per basic event
    gate  <id> <AND|OR> <id> <id>...  one line per gate (two or more inputs)
    top   <id>                      names the TOP gate

The canonical serialization emits basic events in their input order, gates
in topological order (TOP gate last), then the ``top`` line.
"""

import re
from dataclasses import dataclass

AND = "AND"
OR = "OR"

_ID_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_PATTERN = re.compile(r"\S+")


class FaultTreeError(ValueError):
    """Raised on parse failures and on invalid trees.

    ``line`` and ``column`` are 1-based positions into the source text when
    the error originates from a specific token.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class BasicEvent:
    id: str
    p: float


@dataclass(frozen=True)
class GateEvent:
    id: str
    op: str
    inputs: tuple[str, ...]


@dataclass(frozen=True)
class FaultTree:
    """A fault tree with its intermediary gates in topological order.

    ``gate_events`` holds the intermediary events only; the TOP gate is kept
    separately in ``top``.  Use :func:`validate` to check all structural
    invariants of an instance built by hand.
    """

    basic_events: tuple[BasicEvent, ...]
    gate_events: tuple[GateEvent, ...]
    top: GateEvent

    @property
    def n_be(self) -> int:
        return len(self.basic_events)

    @property
    def n_ie(self) -> int:
        return len(self.gate_events)

    @property
    def all_gates(self) -> tuple[GateEvent, ...]:
        """Intermediary gates followed by the TOP gate."""
        return self.gate_events + (self.top,)

    def basic_index(self, event_id: str) -> int:
        for i, be in enumerate(self.basic_events):
            if be.id == event_id:
                return i
        raise KeyError(event_id)

    def probabilities(self) -> tuple[float, ...]:
        return tuple(be.p for be in self.basic_events)


def parse_fault_tree(source) -> FaultTree:
    """Parse the text format into a validated :class:`FaultTree`.

    ``source`` is a string or a readable text stream.  Gates may be declared
    in any order; they are re-sorted topologically.  Raises
    :class:`FaultTreeError` on syntax errors (with line/column), unknown or
    duplicate ids, out-of-range probabilities, non-AND/OR operators, cycles,
    and events unreachable from the TOP gate.
    """
    if hasattr(source, "read"):
        source = source.read()

    basics: list[BasicEvent] = []
    gates: list[GateEvent] = []
    gate_lines: dict[str, int] = {}
    seen_ids: dict[str, int] = {}
    top_id: str | None = None
    top_line: int | None = None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_PATTERN.finditer(line)]
        if not tokens:
            continue
        keyword, kw_col = tokens[0]

        if keyword == "basic":
            if len(tokens) != 3:
                raise FaultTreeError("expected 'basic <id> p=<float>'", lineno, kw_col)
            name, name_col = tokens[1]
            _check_id(name, lineno, name_col)
            _check_fresh(name, seen_ids, lineno, name_col)
            prob_tok, prob_col = tokens[2]
            if not prob_tok.startswith("p="):
                raise FaultTreeError(f"expected 'p=<float>', got {prob_tok!r}", lineno, prob_col)
            try:
                p = float(prob_tok[2:])
            except ValueError:
                raise FaultTreeError(f"bad probability {prob_tok[2:]!r}", lineno, prob_col) from None
            if not 0.0 <= p <= 1.0:
                raise FaultTreeError(f"probability {p!r} outside [0, 1]", lineno, prob_col)
            seen_ids[name] = lineno
            basics.append(BasicEvent(name, p))

        elif keyword == "gate":
            if len(tokens) < 3:
                raise FaultTreeError("expected 'gate <id> <AND|OR> <id> <id>...'", lineno, kw_col)
            name, name_col = tokens[1]
            _check_id(name, lineno, name_col)
            _check_fresh(name, seen_ids, lineno, name_col)
            op, op_col = tokens[2]
            if op not in (AND, OR):
                raise FaultTreeError(
                    f"operator {op!r}: non-coherent tree unsupported (only AND and OR)",
                    lineno, op_col,
                )
            inputs = []
            for tok, col in tokens[3:]:
                _check_id(tok, lineno, col)
                if tok in inputs:
                    raise FaultTreeError(f"duplicate input {tok!r}", lineno, col)
                inputs.append(tok)
            if len(inputs) < 2:
                raise FaultTreeError(f"gate {name!r} needs at least 2 inputs", lineno, kw_col)
            seen_ids[name] = lineno
            gates.append(GateEvent(name, op, tuple(inputs)))
            gate_lines[name] = lineno

        elif keyword == "top":
            if len(tokens) != 2:
                raise FaultTreeError("expected 'top <id>'", lineno, kw_col)
            if top_id is not None:
                raise FaultTreeError("duplicate 'top' declaration", lineno, kw_col)
            top_id, _ = tokens[1]
            top_line = lineno

        else:
            raise FaultTreeError(f"unknown directive {keyword!r}", lineno, kw_col)

    if not basics:
        raise FaultTreeError("no basic events declared")
    if top_id is None:
        raise FaultTreeError("missing 'top' declaration")

    gate_ids = {g.id for g in gates}
    basic_ids = {b.id for b in basics}
    if top_id not in gate_ids:
        if top_id in basic_ids:
            raise FaultTreeError(f"top must name a gate event, not basic event {top_id!r}", top_line)
        raise FaultTreeError(f"top names unknown gate {top_id!r}", top_line)

    for g in gates:
        for ref in g.inputs:
            if ref not in gate_ids and ref not in basic_ids:
                raise FaultTreeError(f"gate {g.id!r} references unknown event {ref!r}", gate_lines[g.id])

    by_id = {g.id: g for g in gates}
    top_gate = by_id.pop(top_id)
    intermediaries = [g for g in gates if g.id != top_id]

    cycle = _find_cycle({g.id: g.inputs for g in gates})
    if cycle:
        raise FaultTreeError("cycle detected: " + " -> ".join(cycle))

    ordered = _topological_order(intermediaries)
    tree = FaultTree(tuple(basics), tuple(ordered), top_gate)

    unreachable = _unreachable_events(tree)
    if unreachable:
        raise FaultTreeError(
            "events unreachable from TOP (orphans): " + ", ".join(sorted(unreachable))
        )
    return tree


def serialize_fault_tree(tree: FaultTree) -> str:
    """Emit the canonical text form; re-parsing it reproduces ``tree``."""
    lines = [f"basic {be.id} p={be.p!r}" for be in tree.basic_events]
    for g in tree.all_gates:
        lines.append(f"gate {g.id} {g.op} " + " ".join(g.inputs))
    lines.append(f"top {tree.top.id}")
    return "\n".join(lines) + "\n"


def validate(tree: FaultTree) -> list[str]:
    """Return a human-readable description of every invariant violation.

    An empty list means the tree is valid.  Violations are data, not
    exceptions, so partially-built trees can be inspected.
    """
    violations: list[str] = []

    if tree.n_be < 1:
        violations.append("tree has no basic events")

    seen: set[str] = set()
    for be in tree.basic_events:
        if not _ID_PATTERN.match(be.id):
            violations.append(f"basic event id {be.id!r} is not a valid identifier")
        if be.id in seen:
            violations.append(f"duplicate event id {be.id!r}")
        seen.add(be.id)
        if not 0.0 <= be.p <= 1.0:
            violations.append(f"basic event {be.id!r}: probability {be.p!r} outside [0, 1]")

    known = {be.id for be in tree.basic_events}
    for g in tree.all_gates:
        if not _ID_PATTERN.match(g.id):
            violations.append(f"gate id {g.id!r} is not a valid identifier")
        if g.id in seen:
            violations.append(f"duplicate event id {g.id!r}")
        seen.add(g.id)
        if g.op not in (AND, OR):
            violations.append(f"gate {g.id!r}: operator {g.op!r} makes the tree non-coherent")
        if len(g.inputs) < 2:
            violations.append(f"gate {g.id!r} has fewer than 2 inputs")
        if len(set(g.inputs)) != len(g.inputs):
            violations.append(f"gate {g.id!r} lists an input more than once")

    gate_ids = {g.id for g in tree.all_gates}
    for g in tree.all_gates:
        for ref in g.inputs:
            if ref not in known and ref not in gate_ids:
                violations.append(f"gate {g.id!r} references unknown event {ref!r}")

    cycle = _find_cycle({g.id: g.inputs for g in tree.all_gates})
    if cycle:
        violations.append("cycle detected: " + " -> ".join(cycle))
    else:
        # Stored order must already be topological: a gate may only consume
        # gates that appear before it.
        position = {g.id: i for i, g in enumerate(tree.gate_events)}
        for i, g in enumerate(tree.gate_events):
            for ref in g.inputs:
                if ref in position and position[ref] >= i:
                    violations.append(
                        f"gate order violation: {g.id!r} consumes {ref!r} which is not defined earlier"
                    )
        unreachable = _unreachable_events(tree)
        if unreachable:
            violations.append(
                "events unreachable from TOP (orphans): " + ", ".join(sorted(unreachable))
            )

    return violations


def _check_id(token: str, lineno: int, col: int) -> None:
    if not _ID_PATTERN.match(token):
        raise FaultTreeError(f"invalid identifier {token!r}", lineno, col)


def _check_fresh(name: str, seen: dict[str, int], lineno: int, col: int) -> None:
    if name in seen:
        raise FaultTreeError(
            f"duplicate id {name!r} (first declared on line {seen[name]})", lineno, col
        )


def _find_cycle(inputs_of: dict[str, tuple[str, ...]]) -> list[str] | None:
    """DFS cycle search over gate-to-gate edges; returns one cycle path."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {g: WHITE for g in inputs_of}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for ref in inputs_of[node]:
            if ref not in inputs_of:
                continue
            if color[ref] == GRAY:
                return stack[stack.index(ref):] + [ref]
            if color[ref] == WHITE:
                found = visit(ref)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for g in inputs_of:
        if color[g] == WHITE:
            found = visit(g)
            if found:
                return found
    return None


def _topological_order(gates: list[GateEvent]) -> list[GateEvent]:
    """Stable Kahn sort: gates already in a valid order keep their order."""
    by_id = {g.id: g for g in gates}
    unresolved = {g.id: {ref for ref in g.inputs if ref in by_id} for g in gates}
    ordered: list[GateEvent] = []
    placed: set[str] = set()
    pending = list(gates)
    while pending:
        progressed = False
        remaining = []
        for g in pending:
            if unresolved[g.id] <= placed:
                ordered.append(g)
                placed.add(g.id)
                progressed = True
            else:
                remaining.append(g)
        if not progressed:
            # Unreachable when the caller has already excluded cycles.
            raise FaultTreeError("cycle detected among gates: " + ", ".join(g.id for g in remaining))
        pending = remaining
    return ordered


def _unreachable_events(tree: FaultTree) -> set[str]:
    by_id = {g.id: g for g in tree.all_gates}
    reached: set[str] = set()
    frontier = [tree.top.id]
    while frontier:
        node = frontier.pop()
        if node in reached:
            continue
        reached.add(node)
        gate = by_id.get(node)
        if gate is not None:
            frontier.extend(gate.inputs)
    every = {be.id for be in tree.basic_events} | set(by_id)
    return every - reached
