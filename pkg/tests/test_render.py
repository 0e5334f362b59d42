import json
from xml.etree import ElementTree

import pytest

from octaweier.hyperbolic_tiler import develop_flat, generate_tiling, petrie_geodesics
from octaweier.lattice_mesh import tile_patch
from octaweier import plotting
from octaweier.render import svg_chart, svg_flat, svg_tiling

SVG = "{http://www.w3.org/2000/svg}"


def _paths(data, cls):
    root = ElementTree.fromstring(data)
    return [p for p in root.iter(SVG + "path") if p.get("class") == cls]


def _metadata(data):
    root = ElementTree.fromstring(data)
    return json.loads(root.find(SVG + "metadata").text)


def test_tiling_svg():
    tiles = generate_tiling(3)
    data = svg_tiling(tiles)
    assert len(_paths(data, "tile")) == len(tiles) == 22
    assert _metadata(data)["triangles"] == 22


def test_chart_svg(X, chart):
    data = svg_chart(chart, petrie_geodesics(chart, X))
    assert len(_paths(data, "face")) == 32
    assert len(_paths(data, "boundary")) == 1
    dashed = [p for p in _paths(data, "petrie") if p.get("stroke-dasharray")]
    assert len(dashed) == 16
    assert _metadata(data)["pairing"] == chart.pairing


def test_chart_svg_without_chains(chart):
    assert _paths(svg_chart(chart), "petrie") == []


def test_flat_svg_metadata(chart):
    meta = _metadata(svg_flat(develop_flat((1, 1, 5), chart)))
    assert meta["k"] == [1, 1, 5]
    assert max(meta["cones_over_pi"].values()) == pytest.approx(10)
    assert meta["self_overlapping"] is False


def test_self_overlapping_flag(chart):
    meta = _metadata(svg_flat(develop_flat((5, 1, 1), chart)))
    assert meta["self_overlapping"] is True
    assert meta["cones_over_pi"]["P_0"] == pytest.approx(10)


def test_pngs(tmp_path, X, chart):
    plotting.plot_tiling(generate_tiling(2), tmp_path / "t.png")
    plotting.plot_chart(chart, petrie_geodesics(chart, X), tmp_path / "c.png")
    plotting.plot_flat(develop_flat((2, 2, 2), chart), tmp_path / "f.png")
    plotting.plot_mesh(tile_patch(1, 1, 1), tmp_path / "m.png")
    plotting.plot_weights([{"place": "P_0", "degree": 1, "gap_weight": 2}], tmp_path / "w.png")
    for name in "tcfmw":
        assert (tmp_path / f"{name}.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
