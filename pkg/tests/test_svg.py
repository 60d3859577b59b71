import re

import pytest

from cellule.errors import RankUnsupported
from cellule.svg import render_svg, window_elements


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a2_window_size(session, k):
    LC = session("A~2").cells
    assert len(window_elements(LC, k)) == 6 * k * k
    assert render_svg(LC, k).count("<polygon") == 6 * k * k


def test_marker_and_fill_classes(session):
    svg = render_svg(session("A~2").cells, 2)
    assert svg.startswith('<?xml version="1.0"') and 'version="1.1"' in svg
    assert set(re.findall(r'<circle class="([^"]+)"', svg)) == {"special"}
    # A0 is outside c0 and drawn gray
    assert re.search(r'fill="#d9d9d9"><title>e</title>', svg)


def test_g2_renders_with_weighted_walls(session):
    svg = render_svg(session("G~2", (2, 1, 2)).cells, 2)
    assert {"weight-1", "weight-2"} <= set(re.findall(r"weight-\d+", svg))
    assert svg.count('class="special"') > 0


def test_blocks_get_distinct_colours(session):
    S = session("C~2", (1, 1, 1))
    svg = render_svg(S.cells, 3)
    fills = set(re.findall(r'class="alcove c0"[^>]*fill="([^"]+)"', svg))
    labels = {a.label for a in map(S.cells.assign_N, window_elements(S.cells, 3)) if a is not None}
    assert len(fills) == len(labels) >= 6


def test_deterministic(session):
    LC = session("C~2", (2, 1, 1)).cells
    assert render_svg(LC, 2) == render_svg(LC, 2)


def test_rank_three_rejected(session):
    with pytest.raises(RankUnsupported):
        render_svg(session("B~3").cells, 1)
