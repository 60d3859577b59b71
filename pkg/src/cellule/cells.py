"""Left preorder, cells on length balls, and the lowest two-sided cell c0.

W is infinite, so every computation here is truncated to a ball of bounded
length. Blocks that touch the boundary of the ball are marked ``open``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import networkx as nx

from .coxeter import CoxeterSystem, Element
from .errors import (
    AmbiguousAssignment,
    NoAssignment,
    OracleDisagreement,
    StabilizationUnknown,
    StabilizationWarning,
)
from .geometry import AlcoveGeometry, SpecialPoint
from .hecke import HeckeAlgebra
from .parabolic import ParabolicModuleContext

__all__ = ["PreorderGraph", "CellPartition", "LowestCell"]


@dataclass
class PreorderGraph:
    N: int
    nodes: list[Element]
    edges: set[tuple[Element, Element]]  # (y, w): y <=_L w by one generating step


@dataclass
class CellPartition:
    N: int
    blocks: list[list[Element]]
    open: list[bool]
    truncated: bool = True


@dataclass
class Assignment:
    lam: SpecialPoint
    z: Element
    x: Element

    @property
    def label(self) -> tuple[int, tuple[int, ...]]:
        return (self.lam.vertex_type, self.z.key)


@dataclass
class LowestCell:
    W: CoxeterSystem
    geometry: AlcoveGeometry | None = None
    hecke: HeckeAlgebra | None = None
    radius: int = 2
    m_bound: int | None = None
    _fact: dict[Element, bool] = field(default_factory=dict, repr=False)
    _M: dict[int, list[Element]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.geometry is None:
            self.geometry = AlcoveGeometry(self.W)
        if self.hecke is None:
            self.hecke = HeckeAlgebra(self.W)
        self.big_S = [frozenset(J) for J in self.W.big_S]
        if self.m_bound is None:
            self.m_bound = 2 * self.W.nu + 2

    # -- membership ---------------------------------------------------------

    def c0_contains_factorization(self, w: Element) -> bool:
        """Is w = x.w_J.y for some J in big-S? Strip right descents until a
        prefix has some J entirely among its right descents."""
        hit = self._fact.get(w)
        if hit is not None:
            return hit
        W = self.W
        stack = [w]
        order = []
        while stack:
            u = stack.pop()
            if u in self._fact:
                continue
            order.append(u)
            D = W.descents(u, "right")
            if any(J <= D for J in self.big_S):
                self._fact[u] = True
                continue
            stack.extend(W.right(u, s) for s in D)
        for u in reversed(order):
            if u in self._fact:
                continue
            D = W.descents(u, "right")
            self._fact[u] = any(J <= D for J in self.big_S) or any(self._fact[W.right(u, s)] for s in D)
        return self._fact[w]

    def c0_contains(self, w: Element, check: bool = False) -> bool:
        """Geometric test; ``check=True`` also runs the factorization oracle."""
        res = self.geometry.strip_c0_test(w)
        if check and res != self.c0_contains_factorization(w):
            raise OracleDisagreement(f"c0 oracles disagree on {self.W.word_string(w)}")
        return res

    # -- the decomposition into N_{lambda,z} ----------------------------------

    @property
    def R(self) -> list[SpecialPoint]:
        return self.geometry.omega_orbit_reps(self.radius)

    def _M_upto(self, lam: SpecialPoint, bound: int) -> list[Element]:
        W = self.W
        out = []
        for z in W.ball(bound):
            if W.descents(z, "left") & lam.S_lambda:
                continue
            wz = W.multiply(lam.w_lambda, z)
            if all(not self.c0_contains_factorization(W.left(s, wz)) for s in lam.S_lambda):
                out.append(z)
        return out

    def enumerate_M_lambda(self, lam: SpecialPoint, bound: int | None = None, strict: bool = False) -> list[Element]:
        """M_lambda truncated at length ``bound``; warns (or raises when
        ``strict``) if the list grew between bound - 1 and bound."""
        bound = self.m_bound if bound is None else bound
        full = self._M_upto(lam, bound)
        if any(z.length == bound for z in full):
            msg = f"M_lambda for lambda={lam.name} still growing at length {bound}"
            if strict:
                raise StabilizationUnknown(msg)
            warnings.warn(msg, StabilizationWarning, stacklevel=2)
        return full

    def M(self, lam: SpecialPoint) -> list[Element]:
        t = lam.vertex_type
        if t not in self._M:
            self._M[t] = self.enumerate_M_lambda(lam, strict=True)
        return self._M[t]

    def count_left_cells_in_c0(self, bound: int | None = None) -> int:
        if bound is None:
            return sum(len(self.M(lam)) for lam in self.R)
        return sum(len(self.enumerate_M_lambda(lam, bound, strict=True)) for lam in self.R)

    def assign_N(self, w: Element) -> Assignment | None:
        if not self.c0_contains_factorization(w):
            return None
        W = self.W
        found = []
        for lam in self.R:
            wl = lam.w_lambda
            for z in self.M(lam):
                x = W.multiply(W.multiply(w, W.inverse(z)), wl)
                if x.length + wl.length + z.length == w.length:
                    found.append(Assignment(lam, z, x))
        if not found:
            raise NoAssignment(f"{W.word_string(w)} lies in c0 but in no N_(lambda,z)")
        if len(found) > 1:
            raise AmbiguousAssignment(f"{W.word_string(w)} lies in {len(found)} blocks")
        return found[0]

    def module_context(self, lam: SpecialPoint, z: Element) -> ParabolicModuleContext:
        return ParabolicModuleContext(self.hecke, lam, z)

    # -- preorder and cells -------------------------------------------------

    def left_preorder_graph(self, N: int) -> PreorderGraph:
        W, H = self.W, self.hecke
        nodes = W.ball(N)
        edges = set()
        for w in nodes:
            for s in range(len(W.generators)):
                for y in H.ts_times_c(s, w).terms:
                    edges.add((y, w))
        return PreorderGraph(N, nodes, edges)

    def cell_partition(self, g: PreorderGraph) -> CellPartition:
        inside = set(g.nodes)
        G = nx.DiGraph()
        G.add_nodes_from(g.nodes)
        G.add_edges_from((y, w) for y, w in g.edges if y in inside)
        leaks = {w for y, w in g.edges if y not in inside}
        blocks, flags = [], []
        for comp in nx.strongly_connected_components(G):
            block = sorted(comp, key=Element.sort_key)
            blocks.append(block)
            flags.append(any(w.length >= g.N or w in leaks for w in block))
        order = sorted(range(len(blocks)), key=lambda i: blocks[i][0].sort_key())
        return CellPartition(g.N, [blocks[i] for i in order], [flags[i] for i in order])

    def verify_block_closure(self, N: int) -> dict:
        """Every C_y occurring in T_s C_w (w in c0, length <= N) stays in the
        N_(lambda,z) block of w."""
        W, H = self.W, self.hecke
        checked = 0
        violations = []
        for w in W.ball(N):
            a = self.assign_N(w)
            if a is None:
                continue
            for s in range(len(W.generators)):
                for y in H.ts_times_c(s, w).terms:
                    checked += 1
                    b = self.assign_N(y)
                    if b is None or b.label != a.label:
                        violations.append(
                            {
                                "w": W.word_string(w),
                                "s": W.generators[s],
                                "y": W.word_string(y),
                                "block_w": _label_str(W, a),
                                "block_y": None if b is None else _label_str(W, b),
                            }
                        )
        return {"N": N, "edges_checked": checked, "violations": violations}


def _label_str(W: CoxeterSystem, a: Assignment) -> str:
    return f"N(lambda={a.lam.name}, z={W.word_string(a.z)})"
