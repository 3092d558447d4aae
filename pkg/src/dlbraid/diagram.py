"""Closed diagrams with double lines, Gauss data, and the braiding process.

A diagram is a purely combinatorial object: nodes are classical crossings
(kind "x", signed), virtual crossings (kind "v"), or double lines (kind "d",
signed), and arcs are directed edges between node ports.  Classical and
virtual crossings expose four ports; looking at the node with both strands
directed downward, ports 1 and 2 are incoming (1 on the underpass for a
classical crossing) and ports 3 and 4 are outgoing (3 the underpass
continuation).  A double line has incoming port 1 and outgoing port 2.
Node-free circle components carry no ports and are stored as a count.

The Gauss data of a diagram is the quintuple (V, S, dlL, E, mu): classical
crossings, their signs, double lines (with signs), the arc-connection set E
over boundary points after erasing virtual crossings, and the number of
components.  Two diagrams with isomorphic Gauss data present the same link,
so Gauss data is the faithful interface; ``gauss_isomorphic`` searches for a
witness bijection by backtracking.

``braid_from_diagram`` runs the braiding process: nodes are placed in
distinct angular sectors in id order, a registry tracks the arcs crossing
the current angle, virtual letters route the required arcs to the bottom
positions before each node's generator is emitted, and a final routing block
restores the base-angle order.  The result is a braid word whose closure has
the same Gauss data as the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterator

from .braid import BraidWord, Letter, rho, sigma, tau

NodeId = Any  # hashable; ints or strings in practice
Point = tuple[NodeId, int]  # (node id, port)

IN_PORTS = {"x": (1, 2), "v": (1, 2), "d": (1,)}
OUT_PORTS = {"x": (3, 4), "v": (3, 4), "d": (2,)}
# strand pairing through a node, incoming port -> outgoing port
THROUGH = {"x": {1: 3, 2: 4}, "v": {1: 3, 2: 4}, "d": {1: 2}}


@dataclass(frozen=True)
class Node:
    id: NodeId
    kind: str  # "x" | "v" | "d"
    sign: int = 0  # +-1 for x and d, 0 for v

    def __post_init__(self):
        if self.kind not in ("x", "v", "d"):
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.kind == "v":
            if self.sign:
                raise ValueError("virtual crossings are unsigned")
        elif self.sign not in (1, -1):
            raise ValueError(f"node {self.id!r} needs sign +-1")


@dataclass(frozen=True)
class DlDiagram:
    """Nodes, directed arcs between ports, and node-free circles."""

    nodes: tuple[Node, ...]
    arcs: tuple[tuple[Point, Point], ...]  # (tail = out-port, head = in-port)
    free_loops: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        by_id = {}
        for nd in self.nodes:
            if nd.id in by_id:
                raise ValueError(f"duplicate node id {nd.id!r}")
            by_id[nd.id] = nd
        if self.free_loops < 0:
            raise ValueError("free_loops must be nonnegative")
        tails, heads = set(), set()
        for tail, head in self.arcs:
            for pt, role, ports, seen in (
                (tail, "tail", OUT_PORTS, tails),
                (head, "head", IN_PORTS, heads),
            ):
                nid, port = pt
                if nid not in by_id:
                    raise ValueError(f"arc {role} references unknown node {nid!r}")
                if port not in ports[by_id[nid].kind]:
                    raise ValueError(f"port {port} is not a valid {role} port on {nid!r}")
                if pt in seen:
                    raise ValueError(f"port {pt} has two incident arc ends")
                seen.add(pt)
        want = {(nd.id, p) for nd in self.nodes for p in OUT_PORTS[nd.kind]}
        if tails != want or heads != {(nd.id, p) for nd in self.nodes for p in IN_PORTS[nd.kind]}:
            raise ValueError("every port needs exactly one incident arc end")

    def node(self, nid: NodeId) -> Node:
        for nd in self.nodes:
            if nd.id == nid:
                return nd
        raise KeyError(nid)

    def mu(self) -> int:
        """Number of components of the underlying curve."""
        head_of = {tail: head for tail, head in self.arcs}
        kind = {nd.id: nd.kind for nd in self.nodes}
        seen: set[Point] = set()
        count = self.free_loops
        for tail in head_of:
            if tail in seen:
                continue
            count += 1
            cur = tail
            while cur not in seen:
                seen.add(cur)
                nid, in_port = head_of[cur]
                cur = (nid, THROUGH[kind[nid]][in_port])
        return count


@dataclass(frozen=True)
class GaussData:
    V: frozenset
    S: tuple[tuple[NodeId, int], ...]  # sorted (crossing id, sign) pairs
    dlL: frozenset
    dl_sign: tuple[tuple[NodeId, int], ...]
    E: frozenset  # of (Point, Point)
    mu: int

    def sign_map(self) -> dict:
        return dict(self.S) | dict(self.dl_sign)


# ---------------------------------------------------------------------------
# closure of a braid word
# ---------------------------------------------------------------------------

_TILES = {
    # (kind, sign) -> (in ports by offset, out ports by offset)
    ("s", 1): ({0: 2, 1: 1}, {0: 3, 1: 4}),
    ("s", -1): ({0: 1, 1: 2}, {0: 4, 1: 3}),
    ("r", 1): ({0: 1, 1: 2}, {0: 4, 1: 3}),
}


def _letter_tile(lt: Letter):
    if lt.kind == "t":
        return {0: 1}, {0: 2}
    return _TILES[(lt.kind, lt.sign if lt.kind == "s" else 1)]


def closure_diagram(w: BraidWord) -> DlDiagram:
    """Closed-braid diagram: one node per letter, top-i joined to bottom-i."""
    nodes = []
    arcs: list[tuple[Point, Point]] = []
    current: list[Point | None] = [None] * w.n
    first_in: list[Point | None] = [None] * w.n
    for k, lt in enumerate(w.letters):
        kind = {"s": "x", "t": "d", "r": "v"}[lt.kind]
        nodes.append(Node(k, kind, lt.sign if kind != "v" else 0))
        ins, outs = _letter_tile(lt)
        for off, port in ins.items():
            pos = lt.index - 1 + off
            if current[pos] is None:
                first_in[pos] = (k, port)
            else:
                arcs.append((current[pos], (k, port)))
            current[pos] = None
        for off, port in outs.items():
            current[lt.index - 1 + off] = (k, port)
    free = 0
    for pos in range(w.n):
        if current[pos] is None:
            free += 1
        else:
            arcs.append((current[pos], first_in[pos]))
    return DlDiagram(tuple(nodes), tuple(arcs), free)


# ---------------------------------------------------------------------------
# Gauss data
# ---------------------------------------------------------------------------

def _erased_arcs(d: DlDiagram) -> tuple[list[tuple[Point, Point]], int]:
    """Arcs after splicing out virtual crossings; also counts all-virtual loops."""
    head_of = {tail: head for tail, head in d.arcs}
    kind = {nd.id: nd.kind for nd in d.nodes}
    arcs = []
    seen: set[Point] = set()
    for tail in head_of:
        if kind[tail[0]] == "v":
            continue
        cur = tail
        while True:
            seen.add(cur)
            nid, in_port = head_of[cur]
            if kind[nid] != "v":
                arcs.append((tail, (nid, in_port)))
                break
            cur = (nid, THROUGH["v"][in_port])
    loops = 0
    for tail in head_of:
        if kind[tail[0]] != "v" or tail in seen:
            continue
        loops += 1
        cur = tail
        while cur not in seen:
            seen.add(cur)
            nid, in_port = head_of[cur]
            cur = (nid, THROUGH["v"][in_port])
    return arcs, loops


def gauss_data(d: DlDiagram) -> GaussData:
    arcs, _ = _erased_arcs(d)
    xs = [nd for nd in d.nodes if nd.kind == "x"]
    dls = [nd for nd in d.nodes if nd.kind == "d"]
    return GaussData(
        V=frozenset(nd.id for nd in xs),
        S=tuple(sorted((nd.id, nd.sign) for nd in xs)),
        dlL=frozenset(nd.id for nd in dls),
        dl_sign=tuple(sorted((nd.id, nd.sign) for nd in dls)),
        E=frozenset(arcs),
        mu=d.mu(),
    )


def gauss_isomorphic(g1: GaussData, g2: GaussData) -> tuple[bool, dict | None]:
    """Search for a kind- and sign-preserving bijection matching E; (ok, witness)."""
    if g1.mu != g2.mu or len(g1.V) != len(g2.V) or len(g1.dlL) != len(g2.dlL):
        return False, None
    s1, s2 = g1.sign_map(), g2.sign_map()
    # candidates grouped by (kind, sign)
    def group(g, s):
        out: dict[tuple[str, int], list] = {}
        for v in g.V:
            out.setdefault(("x", s[v]), []).append(v)
        for dl in g.dlL:
            out.setdefault(("d", s[dl]), []).append(dl)
        return out

    grp1, grp2 = group(g1, s1), group(g2, s2)
    if {k: len(v) for k, v in grp1.items()} != {k: len(v) for k, v in grp2.items()}:
        return False, None
    order = sorted((nid for vs in grp1.values() for nid in vs), key=repr)
    cls1 = {nid: key for key, vs in grp1.items() for nid in vs}
    # adjacency on node ids with the ports both arcs use
    adj1: dict[NodeId, list[tuple[int, NodeId, int]]] = {nid: [] for nid in order}
    for (a, pa), (b, pb) in g1.E:
        adj1[a].append((pa, b, pb))
    e2 = g2.E

    assign: dict[NodeId, NodeId] = {}
    used: set[NodeId] = set()

    def consistent(nid) -> bool:
        img = assign[nid]
        for pa, b, pb in adj1[nid]:
            if b in assign and ((img, pa), (assign[b], pb)) not in e2:
                return False
        for (a, pa), (b, pb) in g1.E:
            if b == nid and a in assign and ((assign[a], pa), (img, pb)) not in e2:
                return False
        return True

    def solve(k: int) -> bool:
        if k == len(order):
            return True
        nid = order[k]
        for cand in sorted(grp2[cls1[nid]], key=repr):
            if cand in used:
                continue
            assign[nid] = cand
            used.add(cand)
            if consistent(nid) and solve(k + 1):
                return True
            del assign[nid]
            used.discard(cand)
        return False

    if solve(0):
        return True, dict(assign)
    return False, None


# ---------------------------------------------------------------------------
# braiding process
# ---------------------------------------------------------------------------

def _id_key(nid: NodeId):
    return (0, nid) if isinstance(nid, int) else (1, repr(nid))


def braid_from_diagram(d: DlDiagram) -> BraidWord:
    """Braid word whose closure has the same Gauss data as the diagram.

    Nodes are processed in id order, each in its own angular sector.  The
    registry lists the arcs crossing the sweep angle from the innermost
    strand outward; rho letters reroute arcs before each generator and a
    final block restores the base-angle order.
    """
    arcs, virtual_loops = _erased_arcs(d)
    order = sorted(
        (nd.id for nd in d.nodes if nd.kind != "v"), key=_id_key
    )
    rank = {nid: k for k, nid in enumerate(order)}
    head_of_tail = {tail: head for tail, head in arcs}
    # an arc wraps past the base angle iff its head node is not strictly later
    wrapping = sorted(
        (t for t, h in head_of_tail.items() if rank[h[0]] <= rank[t[0]]), key=repr
    )
    registry: list[Any] = list(wrapping)
    registry += [("free", k) for k in range(d.free_loops + virtual_loops)]
    n = len(registry)
    if n == 0:
        return BraidWord(1, ())
    incoming: dict[Point, Point] = {h: t for t, h in head_of_tail.items()}
    letters: list[Letter] = []

    def move_to(arc, pos: int) -> None:
        # walk the arc down to the target position with adjacent virtual swaps
        cur = registry.index(arc)
        if cur < pos - 1:
            raise ValueError("routing order violated")
        while cur > pos - 1:
            letters.append(rho(cur))
            registry[cur - 1], registry[cur] = registry[cur], registry[cur - 1]
            cur -= 1

    nodes = {nd.id: nd for nd in d.nodes}
    for nid in order:
        nd = nodes[nid]
        if nd.kind == "d":
            move_to(incoming[(nid, 1)], 1)
            letters.append(tau(1, nd.sign))
            registry[0] = (nid, 2)
            continue
        # classical crossing: the tile for sigma(1, sign) fixes which in-port
        # sits at which position
        if nd.sign > 0:
            first, second = incoming[(nid, 2)], incoming[(nid, 1)]
            outs = ((nid, 3), (nid, 4))
        else:
            first, second = incoming[(nid, 1)], incoming[(nid, 2)]
            outs = ((nid, 4), (nid, 3))
        move_to(first, 1)
        move_to(second, 2)
        letters.append(sigma(1, nd.sign))
        registry[0], registry[1] = outs
    # restore the base-angle order
    target = wrapping + [("free", k) for k in range(d.free_loops + virtual_loops)]
    for pos in range(n):
        cur = registry.index(target[pos], pos)
        while cur > pos:
            letters.append(rho(cur))
            registry[cur - 1], registry[cur] = registry[cur], registry[cur - 1]
            cur -= 1
    word = BraidWord(n, tuple(letters))
    ok, _ = gauss_isomorphic(gauss_data(closure_diagram(word)), gauss_data(d))
    if not ok:
        raise RuntimeError("braiding process produced a non-matching word")
    return word


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def diagram_to_json(d: DlDiagram) -> dict:
    obj: dict[str, Any] = {
        "nodes": [
            {"id": nd.id, "kind": nd.kind, **({"sign": nd.sign} if nd.kind != "v" else {})}
            for nd in d.nodes
        ],
        "arcs": [
            {"from": [tail[0], tail[1]], "to": [head[0], head[1]]}
            for tail, head in d.arcs
        ],
    }
    if d.free_loops:
        obj["free_loops"] = d.free_loops
    return obj


def diagram_from_json(obj: dict) -> DlDiagram:
    try:
        nodes = tuple(
            Node(nd["id"], nd["kind"], nd.get("sign", 0)) for nd in obj["nodes"]
        )
        arcs = tuple(
            ((a["from"][0], a["from"][1]), (a["to"][0], a["to"][1]))
            for a in obj["arcs"]
        )
        free = obj.get("free_loops", 0)
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed diagram object: {exc}") from exc
    return DlDiagram(nodes, arcs, free)


def load_diagram(path: str) -> DlDiagram:
    with open(path) as fh:
        return diagram_from_json(json.load(fh))


def gauss_to_json(g: GaussData) -> dict:
    return {
        "V": sorted(g.V, key=repr),
        "S": [[nid, s] for nid, s in g.S],
        "dlL": sorted(g.dlL, key=repr),
        "dl_sign": [[nid, s] for nid, s in g.dl_sign],
        "E": sorted(
            ([[t[0], t[1]], [h[0], h[1]]] for t, h in g.E), key=repr
        ),
        "mu": g.mu,
    }
