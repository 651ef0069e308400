import base64
import json
import random
import re
from pathlib import Path

import jsonschema
import networkx as nx
import pytest

from nearplat.families import (
    FAMILY_SPECS,
    FamilyId,
    PlatonicId,
    generate_family,
    generate_platonic,
)
from nearplat.formats import (
    HEADER,
    BadHeader,
    DisconnectedRecord,
    InconsistentInvolution,
    NonSimple,
    PlanarCodeError,
    TooLarge,
    TruncatedRecord,
    dumps_report,
    export_dot,
    read_planar_code,
    report_document,
    strip_timing,
    write_planar_code,
)
from nearplat.planar_map import PlanarMap, canonical_code, face_vector, genus
from nearplat.search import SearchTask, enumerate_maps

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())

K4 = PlanarMap([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])
C3 = PlanarMap([(1, 2), (0, 2), (0, 1)])
TETRA = generate_platonic(PlatonicId.TETRAHEDRON)

# Every rotation listed in ascending order, as in the usual hand-written example.
ASCENDING_K4 = bytes([4, 2, 3, 4, 0, 1, 3, 4, 0, 1, 2, 4, 0, 1, 2, 3, 0])
# The same graph with vertex 2 and vertex 4 reversed, which makes it planar.
PLANAR_K4 = bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])


# -- reading --------------------------------------------------------------------------------


def test_ascending_k4_record_decodes_to_the_tetrahedron_graph():
    (pm,) = read_planar_code(HEADER + ASCENDING_K4)
    assert pm.rotations == ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
    assert nx.is_isomorphic(pm.to_networkx(), nx.complete_graph(4))
    # with every rotation ascending the embedding is toroidal, not spherical
    assert genus(pm) == 1


def test_planar_k4_record_decodes_to_the_tetrahedron_map():
    (pm,) = read_planar_code(HEADER + PLANAR_K4)
    assert genus(pm) == 0
    assert canonical_code(pm) == canonical_code(TETRA)
    assert pm == K4


def test_triangle_record():
    (pm,) = read_planar_code(HEADER + bytes([3, 2, 3, 0, 1, 3, 0, 1, 2, 0]))
    assert pm == C3
    assert face_vector(pm) == {3: 2}


def test_header_only_is_empty():
    assert read_planar_code(HEADER) == []


@pytest.mark.parametrize(
    "data,exc",
    [
        (b">>planar_code>>" + bytes([3, 2, 3, 0, 1, 3, 0, 1, 2, 0]), BadHeader),
        (b"", BadHeader),
        (HEADER + bytes([3, 2, 3, 0, 1, 3, 0, 1, 2]), TruncatedRecord),
        (HEADER + bytes([3, 2, 3, 0]), TruncatedRecord),
        (HEADER + bytes([2, 1, 2, 0, 1, 0]), NonSimple),
        (HEADER + bytes([3, 2, 2, 0, 1, 1, 0, 0]), NonSimple),
        (HEADER + bytes([3, 2, 3, 0, 1, 0, 1, 2, 0]), InconsistentInvolution),
        (HEADER + bytes([4, 2, 0, 1, 0, 4, 0, 3, 0]), DisconnectedRecord),
        (HEADER + bytes([3, 2, 5, 0, 1, 3, 0, 1, 2, 0]), PlanarCodeError),
        (HEADER + bytes([0, 3, 0]), TooLarge),
    ],
)
def test_malformed_streams(data, exc):
    with pytest.raises(exc):
        read_planar_code(data)


def test_format_errors_are_value_errors():
    assert issubclass(BadHeader, ValueError)


# -- writing -----------------------------------------------------------------------------------


def test_write_tetrahedron():
    assert write_planar_code([K4]) == HEADER + PLANAR_K4


def test_write_empty():
    assert write_planar_code([]) == HEADER


def test_write_two_triangles():
    rec = bytes([3, 2, 3, 0, 1, 3, 0, 1, 2, 0])
    assert write_planar_code([C3, C3]) == HEADER + rec + rec


def test_rotation_starts_at_the_lowest_neighbour():
    pm = PlanarMap([(3, 1, 2), (2, 3, 0), (0, 3, 1), (1, 2, 0)])
    data = write_planar_code([pm])
    assert data[len(HEADER) :][1:5] == bytes([2, 3, 4, 0])


def test_too_many_vertices():
    big = generate_family(FamilyId.DODECA_THICK_CYCLE, 13)
    assert big.vertex_count > 255
    with pytest.raises(TooLarge):
        write_planar_code([big])


def _scramble(pm, rng):
    perm = list(range(pm.vertex_count))
    rng.shuffle(perm)
    rots = [None] * pm.vertex_count
    for u, rot in enumerate(pm.rotations):
        rots[perm[u]] = [perm[w] for w in rot]
    return PlanarMap(rots)


def _random_maps(n, seed=2024):
    rng = random.Random(seed)
    pool = list(FamilyId)
    out = []
    while len(out) < n:
        if rng.random() < 0.1:
            pm = generate_platonic(rng.choice(list(PlatonicId)))
        else:
            fid = rng.choice(pool)
            d = rng.randint(FAMILY_SPECS[fid].d_min, FAMILY_SPECS[fid].d_min + 5)
            pm = generate_family(fid, d)
        if pm.vertex_count <= 255:
            out.append(_scramble(pm, rng))
    return out


def test_thousand_map_round_trip():
    maps = _random_maps(1000)
    once = write_planar_code(maps)
    back = read_planar_code(once)
    assert back == maps
    assert write_planar_code(back) == once


# -- DOT --------------------------------------------------------------------------------------


def _dot_counts(text):
    nodes = re.findall(r"^\s+(\d+);$", text, re.M)
    edges = re.findall(r"^\s+(\d+) -- (\d+);$", text, re.M)
    return len(nodes), len(edges)


def _comment(text):
    m = re.search(r"/\*(.*?)\*/", text, re.S)
    return m.group(1) if m else None


def test_dot_triangle():
    text = export_dot(C3)
    assert text.startswith("graph G {") and text.rstrip().endswith("}")
    assert _dot_counts(text) == (3, 3)


def test_dot_prism_lists_its_face_vector():
    text = export_dot(generate_family(FamilyId.PRISM, 3))
    assert _dot_counts(text) == (6, 9)
    comment = _comment(text)
    assert "face vector" in comment
    degrees = sorted(int(x) for x in re.findall(r"degree (\d+)", comment))
    assert degrees == [3, 3, 4, 4, 4]


def test_dot_tetrahedron():
    assert _dot_counts(export_dot(TETRA)) == (4, 6)


def test_dot_without_annotations_has_no_comment():
    assert _comment(export_dot(TETRA, face_annotations=False)) is None


def test_dot_is_deterministic():
    pm = generate_family(FamilyId.ICOSA_VERTEX_CYCLE, 3)
    assert export_dot(pm) == export_dot(pm)


def test_dot_edges_match_the_map():
    pm = generate_family(FamilyId.ANTIPRISM, 6)
    edges = re.findall(r"^\s+(\d+) -- (\d+);$", export_dot(pm), re.M)
    assert {(int(a), int(b)) for a, b in edges} == {tuple(sorted(e)) for e in pm.edges()}


# -- report documents ----------------------------------------------------------------------------


def _doc():
    rep = enumerate_maps(SearchTask(3, 4, f1=2, v_max=10))
    return report_document("search", [rep], {"note": "x"}, 1.5)


def test_report_matches_schema():
    doc = json.loads(dumps_report(_doc()))
    jsonschema.validate(doc, SCHEMA)


def test_report_witnesses_decode():
    doc = _doc()
    assert doc["complete"]
    for w in doc["witnesses"]:
        (pm,) = read_planar_code(base64.b64decode(w["planar_code"]))
        assert canonical_code(pm).hex() == w["canonical_code"]


def test_report_nonexistence_cells():
    rep = enumerate_maps(SearchTask(3, 3, f1=1, v_max=12))
    doc = report_document("t", [rep])
    jsonschema.validate(json.loads(dumps_report(doc)), SCHEMA)
    assert all(c["status"] == "COMPLETE" and c["class_count"] == 0 for c in doc["cells"])
    assert any(isinstance(p["v"], str) for p in doc["pruned"])


def test_strip_timing_removes_only_clock_fields():
    doc = strip_timing(_doc())
    assert "elapsed_seconds" not in doc
    assert all("seconds" not in c for c in doc["cells"])
    assert "config_hash" in doc


def test_unknown_cells_make_the_report_incomplete():
    rep = enumerate_maps(SearchTask(3, 3, f1=1, v_max=14, budget_nodes=3))
    doc = report_document("t", [rep])
    jsonschema.validate(json.loads(dumps_report(doc)), SCHEMA)
    assert doc["complete"] is False
