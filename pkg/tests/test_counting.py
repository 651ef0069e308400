from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nearplat.counting import (
    DegenerateDenominator,
    Feasible,
    Infeasible,
    Signature,
    UnsupportedF1,
    admissible_pairs,
    curvature_term,
    disparate_degree_total,
    feasibility_check,
    phi,
    phi_from_edges,
    platonic_vertex_count,
    total_faces,
    vertex_count,
    vertices_for_one_disparate,
)
from nearplat.families import FAMILY_SPECS, generate_family
from nearplat.planar_map import face_vector

FIVE = {(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)}


# -- phi ---------------------------------------------------------------------------------


def test_phi_without_disparate_faces_is_two():
    assert phi(0, 7, 3) == 2


def test_phi_three_triangles_among_pentagons():
    value = phi(3, 3, 5)
    assert value == Fraction(4, 5)
    assert isinstance(value, Fraction)


def test_phi_one_nonagon_among_triangles():
    assert phi(1, 9, 3) == 4


@given(st.integers(0, 3), st.integers(3, 40), st.integers(3, 40))
def test_phi_matches_its_definition(f1, d1, d2):
    assert phi(f1, d1, d2) == 2 + Fraction(f1 * (d1 - d2), d2)


def test_phi_positive_for_at_most_two_disparate_faces():
    for f1 in range(3):
        for d1 in range(3, 41):
            for d2 in range(3, 41):
                assert phi(f1, d1, d2) > 0, (f1, d1, d2)


def test_phi_positive_for_three_disparate_faces_when_d2_at_most_5():
    for d1 in range(3, 41):
        for d2 in range(3, 6):
            assert phi(3, d1, d2) >= Fraction(4, 5)


def test_three_disparate_faces_rule_out_d2_of_six_or_more():
    # no k >= 3 and v admit 2e = kv, v - e + f = 2 and 2e = 3 d1 + d2 (f - 3)
    for k in range(3, 8):
        for v in range(1, 300):
            if (k * v) % 2:
                continue
            e = k * v // 2
            f = 2 - v + e
            for d2 in range(6, 41):
                for d1 in range(3, 41):
                    assert 2 * e != 3 * d1 + d2 * (f - 3) or f < 3, (k, v, d1, d2)


def test_phi_can_vanish_with_four_disparate_faces():
    # the bound really needs f1 <= 3: four triangles among hexagons give 0
    assert phi(4, 3, 6) == 0


# -- admissible pairs ------------------------------------------------------------------------


@pytest.mark.parametrize("f1", [0, 1, 2, 3])
def test_admissible_pairs_are_the_platonic_five(f1):
    pairs = admissible_pairs(f1)
    assert set(pairs) == FIVE and len(pairs) == 5
    assert all((k - 2) * (d2 - 2) < 4 for k, d2 in pairs)


def test_admissible_pairs_reject_four_disparate_faces():
    with pytest.raises(UnsupportedF1):
        admissible_pairs(4)


def test_admissible_pairs_match_a_brute_force_box():
    box = {(k, d) for k in range(3, 50) for d in range(3, 50) if curvature_term(k, d) > 0}
    assert box == FIVE


# -- face and vertex counts ----------------------------------------------------------------------


def test_total_faces_examples():
    assert total_faces(3, 4, 0, 3, 3) == 4
    assert total_faces(3, 8, 0, 4, 4) == 6
    assert total_faces(3, 10, 1, 6, 4) == 7


def test_total_faces_keeps_fractions():
    assert total_faces(3, 5, 1, 4, 3) == Fraction(14, 3)


@pytest.mark.parametrize(
    "k,d2,d1,want",
    [(3, 3, 6, 6), (3, 4, 6, 10), (4, 3, 4, 7), (3, 3, 4, Fraction(14, 3))],
)
def test_vertices_for_one_disparate(k, d2, d1, want):
    assert vertices_for_one_disparate(k, d2, d1) == want


def test_one_disparate_closed_forms():
    # (3,4): v = d1 + 4 and (4,3): v = d1 + 3
    for d1 in range(3, 60):
        assert vertices_for_one_disparate(3, 4, d1) == d1 + 4
        assert vertices_for_one_disparate(4, 3, d1) == d1 + 3


def test_one_disparate_degenerate_pair():
    with pytest.raises(DegenerateDenominator):
        vertices_for_one_disparate(3, 6, 4)


def test_one_disparate_agrees_with_general_relation():
    for k, d2 in FIVE:
        for d1 in range(3, 101):
            if d1 == d2:
                continue
            assert vertices_for_one_disparate(k, d2, d1) == vertex_count(k, d2, 1, d1)


@pytest.mark.parametrize("k,d2,v", [(3, 3, 4), (3, 4, 8), (4, 3, 6), (3, 5, 20), (5, 3, 12)])
def test_platonic_vertex_count(k, d2, v):
    assert platonic_vertex_count(k, d2) == v
    assert Fraction(4 * d2, 2 * d2 - k * d2 + 2 * k) == v


def test_disparate_total_for_two_faces():
    # the prism on 2d vertices has two d-gons: total 2d = v
    for v in (6, 10, 12):
        assert disparate_degree_total(3, 4, 2, v) == v
    assert disparate_degree_total(3, 3, 2, 8) == 12


# -- phi on actual maps ----------------------------------------------------------------------------


def test_phi_identity_on_family_members():
    for fid, spec in FAMILY_SPECS.items():
        if spec.d2 is None:
            continue
        for d in range(spec.d_min, spec.d_min + 4):
            pm = generate_family(fid, d)
            vec = face_vector(pm)
            others = [x for x in vec if x != spec.d2]
            if not others:
                continue
            (d1,) = others
            lhs = phi_from_edges(spec.k, spec.d2, pm.edge_count)
            assert lhs == phi(vec[d1], d1, spec.d2)


# -- signatures --------------------------------------------------------------------------------------


def test_signature_merges_repeated_degrees():
    assert Signature(3, [(4, 2), (4, 3), (5, 1)]).as_dict() == {4: 5, 5: 1}


def test_signature_text_form():
    sig = Signature(3, {4: 5, 5: 2})
    assert str(sig) == "(3; 5^2 4^5)"
    assert Signature.parse("(3; 5^2 4^5)") == sig


def test_signature_dominant_and_disparate():
    sig = Signature(4, {3: 12, 6: 2})
    assert sig.dominant() == 3
    assert sig.disparate() == {6: 2}


def test_signature_rejects_digons():
    with pytest.raises(ValueError):
        Signature(3, {2: 1, 3: 4})


@given(st.integers(3, 6), st.dictionaries(st.integers(3, 40), st.integers(1, 50), min_size=1))
def test_signature_parse_inverts_str(k, faces):
    sig = Signature(k, faces)
    assert Signature.parse(str(sig)) == sig


# -- feasibility ------------------------------------------------------------------------------------------


def test_hexagon_with_four_triangles_is_feasible():
    # v=6, e=9, f=5: one hexagon and four triangles use 6 + 12 = 18 darts
    assert isinstance(feasibility_check(Signature(3, {6: 1, 3: 4}), 6), Feasible)


def test_hexagon_with_six_triangles_fails_the_face_handshake():
    verdict = feasibility_check(Signature(3, {6: 1, 3: 6}), 6)
    assert isinstance(verdict, Infeasible)


@pytest.mark.parametrize("n", [2, 3, 7, 20])
@pytest.mark.parametrize("v", [4, 5, 6, 14])
def test_square_among_triangles_is_never_feasible(n, v):
    verdict = feasibility_check(Signature(3, {4: 1, 3: n}), v)
    assert isinstance(verdict, Infeasible)
    assert verdict.identity == "one-disparate vertex count non-integral"
    assert verdict.detail == "14/3"


def test_tetrahedron_signature_is_feasible():
    assert feasibility_check(Signature(3, {3: 4}), 4)


def test_feasible_means_all_identities_hold():
    for k, d2 in FIVE:
        for v in range(2, 30):
            for d1 in range(3, 30):
                if d1 == d2 or (k * v) % 2:
                    continue
                f = total_faces(k, v, 1, d1, d2)
                if f.denominator != 1 or f < 1:
                    continue
                sig = Signature(k, {d1: 1, d2: int(f) - 1})
                e = k * v // 2
                holds = v - e + int(f) == 2 and d1 + d2 * (int(f) - 1) == 2 * e
                assert bool(feasibility_check(sig, v, d2)) == holds


def test_infeasible_text():
    assert str(Infeasible("x", "y")) == "INFEASIBLE: x (y)"
    assert str(Feasible()) == "FEASIBLE"
