"""Verification suites: one named check per acceptance criterion.

Each check returns its expectation, the observed value and a pass/fail
status, together with the claim it tests. ``run`` assembles them into a
versioned report; timings are kept apart so the rest is byte-stable.
"""

import json
import math
import time
from dataclasses import dataclass
from xml.etree import ElementTree

from . import __version__
from .curve_forms import (gap_weight, holomorphic_basis, is_hyperelliptic, main_curve,
                          toy_curve, translation_structures, verify_curve_relation,
                          wronskian_divisor, deck_orbit_sizes, deck_invariant)
from .function_field import Divisor
from .group_engine import (AUT_PRESENTATION, Presentation, element_order, parse_word,
                           realize_on_map, table_one_words, todd_coxeter)
from .hyperbolic_tiler import (chart_area, chains_rotation_invariant, cone_excess,
                               develop_flat, generate_tiling,
                               pairing_commutes_with_rotation, pairing_is_involution,
                               petrie_geodesics, quotient_matches, unfold_16gon)
from .lattice_mesh import (assemble_fundamental_piece, embedding_violations, export_obj,
                           parse_obj, tile_patch)
from .render import svg_chart, svg_tiling
from .surface_map import (OrientedMap, automorphism_group, cyclic_quotient, euler_genus,
                          face_rotation, inverse, octahedron_map, petrie_polygons,
                          surface_x, valence_profile, vertex_rotation)

SCHEMA = 1
SUITES = ("mesh", "map", "group", "curve", "tiling")


@dataclass
class Check:
    name: str
    suite: str
    criterion: int
    citation: str
    func: object


class Context:
    """Shared, lazily built objects; ``fault`` corrupts the map under test."""

    def __init__(self, fault=None):
        self.fault = fault
        self._cache = {}

    def get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def mesh(self):
        return self.get("mesh", assemble_fundamental_piece)

    @property
    def map(self):
        def build():
            m = surface_x()
            if self.fault == "sigma":
                # swap two images inside one vertex cycle: still a permutation, wrong rotation system
                sigma = list(m.sigma)
                d = 0
                e = sigma[d]
                sigma[d], sigma[e] = sigma[e], sigma[d]
                m = OrientedMap(sigma, list(m.alpha))
            return m
        return self.get("map", build)

    @property
    def clean_map(self):
        return self.get("clean_map", surface_x)

    @property
    def chart(self):
        return self.get("chart", lambda: unfold_16gon(self.clean_map))

    @property
    def curve(self):
        return self.get("curve", main_curve)

    @property
    def basis(self):
        return self.get("basis", lambda: holomorphic_basis(self.curve))

    @property
    def weierstrass(self):
        return self.get("weierstrass", lambda: wronskian_divisor(self.curve, self.basis))


def _status(ok):
    return "pass" if ok else "fail"


# map suite ---------------------------------------------------------------------

def check_euler_genus(ctx):
    m = ctx.map
    census = list(m.census())
    genus = euler_genus(m)
    return [12, 48, 32, 3], census + [genus]


def check_regular_type(ctx):
    m = ctx.map
    vprof, fprof = valence_profile(m)
    val, faces = sorted(vprof), sorted(fprof)
    return {"valences": [8], "face_sizes": [3]}, {"valences": val, "face_sizes": faces}


def check_petrie(ctx):
    m = ctx.map
    polys = petrie_polygons(m)
    edge_of = m.edge_of()
    per_edge = {}
    for p in polys:
        for d in p:
            per_edge[edge_of[d]] = per_edge.get(edge_of[d], 0) + 1
    return ({"count": 16, "lengths": [6], "per_edge": [2]},
            {"count": len(polys), "lengths": sorted({len(p) for p in polys}),
             "per_edge": sorted(set(per_edge.values()))})


def check_automorphisms(ctx):
    m = ctx.map
    aut = automorphism_group(m)
    images = sorted(g[0] for g in aut)
    regular = images == list(range(m.dart_count))
    control = len(automorphism_group(octahedron_map()))
    return ({"order": 96, "simply_transitive": True, "octahedron_control": 24},
            {"order": len(aut), "simply_transitive": regular, "octahedron_control": control})


def check_eightfold_cover(ctx):
    m = ctx.map
    a = vertex_rotation(m, 0)
    try:
        q = cyclic_quotient(m, a)
    except Exception as exc:   # Riemann-Hurwitz failure is a check failure, not a crash
        return {"riemann_hurwitz": True}, {"riemann_hurwitz": False, "error": str(exc)}
    return ({"genus": 0, "branch_values": 3, "signature": [[4, 4], [8], [8]],
             "vertex_orbit_sizes": [1, 1, 2, 8], "riemann_hurwitz": True},
            {"genus": q.genus, "branch_values": len(q.branch_values()), "signature": q.signature(),
             "vertex_orbit_sizes": sorted(len(o) for o in q.vertex_orbits), "riemann_hurwitz": True})


# group suite ----------------------------------------------------------------------

def check_presentation(ctx):
    p = Presentation.parse(AUT_PRESENTATION)
    table = todd_coxeter(p)
    orders = {w: element_order(table, parse_word(w)) for w in ("a", "b", "ab")}
    cosets = {table.act(0, parse_word(w)) for w in table_one_words()}
    m = ctx.map
    a = vertex_rotation(m, 0)
    b = inverse(face_rotation(m, 0))
    rep = realize_on_map(m, a, b, p, table)
    return ({"cosets": 96, "orders": {"a": 8, "b": 3, "ab": 2}, "table_words_distinct": 96,
             "realization": True},
            {"cosets": table.order, "orders": orders, "table_words_distinct": len(cosets),
             "realization": rep.ok})


# curve suite ------------------------------------------------------------------------

def _places(curve):
    return {P.label: P for P in curve.ramified_places()}


def check_curve_forms(ctx):
    C = ctx.curve
    P = _places(C)
    rel = verify_curve_relation(C)
    divs = sorted(repr(f.divisor()) for f in ctx.basis)
    expected = sorted(repr(d) for d in (
        Divisor({P["P_inf"]: 4}), Divisor({P["P_0"]: 4}),
        Divisor({P["P_0"]: 1, P["P_1"]: 1, P["P_-1"]: 1, P["P_inf"]: 1})))
    z_div = C.divisor(C.z)
    return ({"basis_divisors": expected, "degrees": [4, 4, 4], "(z)": {"P_0": 4, "P_inf": -4},
             "relation": True},
            {"basis_divisors": divs, "degrees": [f.divisor().degree for f in ctx.basis],
             "(z)": z_div.as_dict(), "relation": rel["ok"]})


def check_weierstrass(ctx):
    C = ctx.curve
    D = ctx.weierstrass
    P = _places(C)
    ram = {name: gap_weight(P[name], ctx.basis) for name in ("P_0", "P_1", "P_-1", "P_inf")}
    half = D.halve()
    sizes = deck_orbit_sizes(C, half)
    return ({"ramified_weights": {k: 2 for k in ram}, "degree": 24, "twice_effective": True,
             "half_squarefree": True, "half_degree": 12, "deck_invariant": True,
             "orbit_sizes": [1, 1, 2, 8]},
            {"ramified_weights": ram, "degree": D.degree,
             "twice_effective": all(m > 0 and m % 2 == 0 for m in D.mult.values()),
             "half_squarefree": all(m == 1 for m in half.mult.values()),
             "half_degree": half.degree, "deck_invariant": deck_invariant(C, D),
             "orbit_sizes": sizes})


def check_non_hyperelliptic(ctx):
    v = is_hyperelliptic(ctx.curve, ctx.weierstrass)
    toy = is_hyperelliptic(toy_curve())
    return ({"hyperelliptic": False, "witness_weight_below": 3, "toy_hyperelliptic": True},
            {"hyperelliptic": v.hyperelliptic, "witness": v.witness,
             "witness_weight_below": v.hyperelliptic_weight if v.witness_weight < v.hyperelliptic_weight else None,
             "toy_hyperelliptic": toy.hyperelliptic})


def flat_summary(ctx):
    """Per structure: cone table, excess and flat closure from the 16-gon development."""
    out = []
    for cs in translation_structures(ctx.curve):
        flat = develop_flat(cs.k, ctx.chart)
        cones = flat.meta["cones"]
        expected = {"P_0": 2 * math.pi * cs.k[0]}
        for key in cones:
            if key.startswith("P_inf"):
                expected[key] = 2 * math.pi * cs.k[2]
            elif key.startswith("P_pm1"):
                expected[key] = 2 * math.pi * cs.k[1]
        dev = max(abs(cones[k] - expected[k]) for k in cones)
        tenpi = sorted(k for k, v in cones.items() if abs(v - 10 * math.pi) < 1e-6)
        out.append({"k": list(cs.k), "form": cs.form, "excess_over_pi": round(cone_excess(flat) / math.pi, 9),
                    "exact_excess_over_pi": str(cs.excess), "closure": flat.meta["closure"],
                    "angle_deviation": dev, "ten_pi_classes": tenpi,
                    "ten_pi_at_corner": any(not k.startswith("P_0") for k in tenpi)})
    return out


def check_translation_structures(ctx):
    rows = flat_summary(ctx)
    corner_10pi = [r["k"] for r in rows if r["ten_pi_at_corner"]]
    any_10pi = [r["k"] for r in rows if r["ten_pi_classes"]]
    ok_closure = all(r["closure"] < 1e-9 for r in rows)
    ok_angles = all(r["angle_deviation"] < 1e-6 for r in rows)
    ok_excess = all(abs(r["excess_over_pi"] - 8) < 1e-6 and r["exact_excess_over_pi"] == "8" for r in rows)
    return ({"structures": 3, "ten_pi_cone_at_16gon_vertex": 1, "excess_8pi": True,
             "closure_1e-9": True, "angles_1e-6": True},
            {"structures": len(rows), "ten_pi_cone_at_16gon_vertex": len(corner_10pi),
             "structures_with_a_10pi_cone": any_10pi, "excess_8pi": ok_excess,
             "closure_1e-9": ok_closure, "angles_1e-6": ok_angles})


# tiling suite ------------------------------------------------------------------------

def check_sixteen_gon(ctx):
    ch = ctx.chart
    area = chart_area(ch)
    return ({"sides": 16, "triangles": 32, "pairs": 8, "quotient_is_X": True,
             "commutes_with_rotation": True, "area_over_pi": 8},
            {"sides": len(ch.sides), "triangles": len(ch.triangles),
             "pairs": len(ch.pairing) // 2 if pairing_is_involution(ch) else None,
             "quotient_is_X": quotient_matches(ch, ctx.clean_map),
             "commutes_with_rotation": pairing_commutes_with_rotation(ch),
             "area_over_pi": round(area / math.pi, 6) if abs(area - 8 * math.pi) < 1e-6 else area / math.pi})


def _svg_paths(data, cls=None):
    root = ElementTree.fromstring(data)
    ns = "{http://www.w3.org/2000/svg}"
    paths = root.iter(ns + "path")
    return [p for p in paths if cls is None or p.get("class") == cls]


def check_file_outputs(ctx):
    patch = tile_patch(1, 1, 1, ctx.mesh)
    verts, faces = parse_obj(export_obj(patch))
    tiles = generate_tiling(4)
    svg1 = svg_tiling(tiles)
    chains = petrie_geodesics(ctx.chart, ctx.clean_map)
    svg2 = svg_chart(ctx.chart, chains)
    dashed = [p for p in _svg_paths(svg2, "petrie") if p.get("stroke-dasharray")]
    distinct = len({p for t in patch.triangles for p in t})
    return ({"obj_faces": 32, "obj_vertices": distinct, "tiling_paths": len(tiles), "petrie_dashed": 16,
             "petrie_closed_geodesics": 16, "petrie_rotation_invariant": True},
            {"obj_faces": len(faces), "obj_vertices": len(verts),
             "tiling_paths": len(_svg_paths(svg1, "tile")), "petrie_dashed": len(dashed),
             "petrie_closed_geodesics": sum(c.closes_as_geodesic for c in chains),
             "petrie_rotation_invariant": chains_rotation_invariant(chains)})


# mesh suite ------------------------------------------------------------------------

def check_embedding(ctx):
    t0 = time.perf_counter()
    patch = tile_patch(2, 2, 2, ctx.mesh)
    bad = embedding_violations(patch)
    elapsed = time.perf_counter() - t0
    return ({"triangles": 256, "improper_contacts": 0, "under_5s": True},
            {"triangles": len(patch), "improper_contacts": len(bad), "under_5s": elapsed < 5})


CHECKS = [
    Check("euler_genus", "map", 1, 'genus from V - E + F: "12 - 48 + 32 = 2 - 2g"', check_euler_genus),
    Check("regular_type", "map", 2, 'type {3, 8}: "valency at every vertex is eight"', check_regular_type),
    Check("petrie_polygons", "map", 3, 'Petrie polygons "form closed geodesics and have length six"', check_petrie),
    Check("automorphism_group", "map", 4, "Aut(X) has order 96 and acts transitively on flags", check_automorphisms),
    Check("presentation", "group", 5, "<a, b | a^8, b^3, (ab)^2, (a^2b^2)^3, (a^4b^2)^3> and its table of 96 words",
          check_presentation),
    Check("eightfold_cover", "map", 6, "X is a cyclically branched cover over a thrice punctured sphere",
          check_eightfold_cover),
    Check("curve_forms", "curve", 7, '"f^3 - f = g^4" and the divisors of the basis of 1-forms', check_curve_forms),
    Check("weierstrass_census", "curve", 8, '"(0 - 0) + (1 - 1) + (4 - 2) = 2"; weights "add up to 2 . 3 . 4 = 24"',
          check_weierstrass),
    Check("non_hyperelliptic", "curve", 9, '"our surface is not hyperelliptic"', check_non_hyperelliptic),
    Check("translation_structures", "curve", 10, '"cone angle 5pi/4 x 8 = 10pi"', check_translation_structures),
    Check("sixteen_gon", "tiling", 11, '"The 16-gon ... represents the fundamental piece"', check_sixteen_gon),
    Check("embedding", "mesh", 12, "the surface built from octahedra embeds in R^3", check_embedding),
    Check("file_outputs", "tiling", 13, "OBJ and SVG artifacts re-parse with the expected counts", check_file_outputs),
]


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def _compare(expected, actual):
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(_compare(v, actual.get(k)) for k, v in expected.items())
    return expected == actual


def run(suites=None, fault=None):
    """Run the selected suites; unselected checks are reported as skipped."""
    selected = set(suites or SUITES)
    unknown = selected - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    ctx = Context(fault)
    records, timing = [], {}
    for chk in CHECKS:
        rec = {"name": chk.name, "suite": chk.suite, "criterion": chk.criterion, "citation": chk.citation}
        if chk.suite not in selected:
            rec.update(status="skip", expected=None, actual=None)
            records.append(rec)
            continue
        t0 = time.perf_counter()
        try:
            expected, actual = chk.func(ctx)
            expected, actual = _jsonable(expected), _jsonable(actual)
            rec.update(status=_status(_compare(expected, actual)), expected=expected, actual=actual)
        except Exception as exc:
            rec.update(status="fail", expected=None, actual={"error": f"{type(exc).__name__}: {exc}"})
        timing[chk.name] = round(time.perf_counter() - t0, 4)
        records.append(rec)
    counts = {s: sum(r["status"] == s for r in records) for s in ("pass", "fail", "skip")}
    return {"schema": SCHEMA, "tool": "octaweier", "version": __version__,
            "suites": sorted(selected), "checks": records, "summary": counts,
            "ok": counts["fail"] == 0, "timing": timing}


def report_json(report):
    return json.dumps(report, indent=2, sort_keys=True)


def without_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def tsv_lines(report):
    """Tab-delimited rows: criterion, name, suite, status, actual."""
    yield "criterion\tname\tsuite\tstatus\tactual"
    for r in report["checks"]:
        actual = json.dumps(r["actual"], sort_keys=True) if r["actual"] is not None else ""
        yield f"{r['criterion']}\t{r['name']}\t{r['suite']}\t{r['status']}\t{actual}"
