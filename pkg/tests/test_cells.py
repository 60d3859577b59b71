import pytest

from cellule.cells import LowestCell
from cellule.errors import StabilizationUnknown, StabilizationWarning


def test_factorization_examples(session):
    S = session("A~1", (2, 1))
    W, LC = S.W, S.cells
    assert not LC.c0_contains_factorization(W.identity)
    for J in W.big_S:
        assert LC.c0_contains_factorization(W.longest_parabolic(J))
    outside = {W.word_string(w) for w in W.ball(12) if not LC.c0_contains_factorization(w)}
    assert outside == {"e", "s2"}


@pytest.mark.parametrize("label,weights", [("A~2", None), ("A~1", (2, 1)), ("C~2", (2, 1, 1))])
def test_oracles_and_inverse_stability(session, label, weights):
    S = session(label, weights)
    W, LC = S.W, S.cells
    for w in W.ball(10):
        a = LC.c0_contains(w, check=True)
        assert a == LC.c0_contains_factorization(W.inverse(w))


def test_M_lambda_rank_one(session):
    S = session("A~1", (2, 1))
    W, LC = S.W, S.cells
    (lam,) = LC.R
    assert [W.word_string(z) for z in LC.M(lam)] == ["e", "s2"]
    a = LC.assign_N(lam.w_lambda)
    assert a.z == W.identity and a.x == W.identity
    a = LC.assign_N(W.word_to_element("s2 s1"))
    assert (a.z, a.x) == (W.identity, W.gen("s2"))
    a = LC.assign_N(W.word_to_element("s1 s2"))
    assert (a.z, a.x) == (W.gen("s2"), W.identity)
    assert LC.assign_N(W.gen("s2")) is None


@pytest.mark.parametrize("label,weights", [("A~2", None), ("C~2", (1, 1, 1)), ("C~2", (3, 2, 1))])
def test_assignment_partitions_c0(session, label, weights):
    S = session(label, weights)
    W, LC = S.W, S.cells
    labels = set()
    for w in W.ball(12):
        a = LC.assign_N(w)  # raises unless exactly one block
        if a is not None:
            labels.add(a.label)
            assert W.multiply(W.multiply(a.x, a.lam.w_lambda), a.z) == w
    assert len(labels) == LC.count_left_cells_in_c0()


def test_identity_in_every_M(session):
    for label, weights in [("A~2", None), ("C~2", (2, 1, 1)), ("G~2", None)]:
        LC = session(label, weights).cells
        for lam in LC.R:
            assert LC.W.identity in LC.M(lam)


def test_stabilization_flagged(session):
    W = session("A~1", (2, 1)).W
    LC = LowestCell(W, m_bound=1)
    (lam,) = LC.R
    with pytest.raises(StabilizationUnknown):
        LC.M(lam)
    with pytest.warns(StabilizationWarning):
        LC.enumerate_M_lambda(lam, 1)


def test_equal_parameter_rank_one_cells(session):
    S = session("A~1", (1, 1))
    W, LC = S.W, S.cells
    part = LC.cell_partition(LC.left_preorder_graph(6))
    blocks = {frozenset(b) for b in part.blocks}
    for last in (0, 1):
        ending = frozenset(w for w in W.ball(6) if W.descents(w, "right") == {last})
        assert ending in blocks
    assert frozenset({W.identity}) in blocks


def test_preorder_graph_has_descent_loops(session):
    S = session("A~2")
    W, LC = S.W, S.cells
    g = LC.left_preorder_graph(4)
    for w in W.ball(4):
        if w.length:
            assert (w, w) in g.edges


def test_closed_cells_lie_in_one_block(session):
    S = session("C~2", (2, 1, 1))
    LC = S.cells
    part = LC.cell_partition(LC.left_preorder_graph(7))
    for block, is_open in zip(part.blocks, part.open):
        if is_open:
            continue
        labels = {None if a is None else a.label for a in map(LC.assign_N, block)}
        assert len(labels) == 1


@pytest.mark.parametrize("label,weights", [("A~1", (2, 1)), ("A~2", None), ("G~2", (1, 2, 1))])
def test_block_closure_edges(session, label, weights):
    res = session(label, weights).cells.verify_block_closure(8)
    assert res["edges_checked"] > 0 and res["violations"] == []


def test_w_lambda_edges_stay_put(session):
    S = session("C~2", (3, 2, 1))
    W, H, LC = S.W, S.hecke, S.cells
    for lam in LC.R:
        for t in lam.S_lambda:
            assert set(H.ts_times_c(t, lam.w_lambda).terms) == {lam.w_lambda}


@pytest.mark.parametrize(
    "label,weights,order",
    [("A~1", (1, 1), 2), ("A~1", (3, 1), 2), ("A~2", None, 6), ("C~2", (2, 1, 1), 8), ("G~2", (2, 1, 2), 12)],
)
def test_left_cell_count(session, label, weights, order):
    assert session(label, weights).cells.count_left_cells_in_c0() == order
