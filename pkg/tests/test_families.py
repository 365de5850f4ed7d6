import pytest

from kirbyfront.diagram import COEFF_MINUS, trace_components, validate_diagram
from kirbyfront.families import (
    cieliebak_diagram,
    mazur_diagram,
    stabilized_unknot,
    torus_knot_2q,
    trivial_bypass_pair,
    unknot,
)
from kirbyfront.invariants import (
    classical_invariants,
    crossing_data,
    handle_census,
    homology_presentation,
    linking_matrix,
)


def test_cieliebak_realizable_grid():
    for k in range(-2, 3):
        for m in range(1, 5):
            d = cieliebak_diagram(k, m)
            assert validate_diagram(d) == []
            inv = classical_invariants(d, 1)
            assert inv.tb == 1 - 2 * (k + 1 + m)
            assert inv.rot == 2 * k
            lk = linking_matrix(d)
            assert lk.matrix[0][0] == -2 * (k + 1 + m)


def test_cieliebak_unknot_when_realizable():
    # within the unknot mountain range the diagram is a plain zigzag unknot
    d = cieliebak_diagram(1, 2)
    assert sum(1 for e in d.events if e.kind == "X") == 0
    # outside it (|rot| > -tb - 1) the generator uses a torus-knot base
    d = cieliebak_diagram(-2, 1)
    inv = classical_invariants(d, 1)
    assert (inv.tb, inv.rot) == (1, -4)
    assert sum(1 for e in d.events if e.kind == "X") > 0


def test_cieliebak_rejects_bad_m():
    with pytest.raises(ValueError):
        cieliebak_diagram(0, 0)


def test_mazur_fixture_shape():
    d = mazur_diagram()
    assert validate_diagram(d) == []
    tr = trace_components(d)
    assert len(tr.components) == 2
    census = handle_census(d)
    assert census.euler == 1
    assert homology_presentation(d) == []
    lk = linking_matrix(d)
    assert list(lk.over_ones.values()) == [3]
    xs = crossing_data(d)
    alg = sum(s for (_i, a, b, s) in xs if a != b) // 2
    assert alg == 1


def test_trivial_bypass_pair_decorations():
    d, nid, np1 = trivial_bypass_pair()
    assert d.attrs[np1 - 1].node_plus and d.attrs[np1 - 1].node_minus
    assert d.attrs[np1 - 1].dashed_links == (nid,)
    assert d.attrs[nid - 1].coefficient == COEFF_MINUS
    assert validate_diagram(d) == []


def test_stabilized_unknot():
    d = stabilized_unknot()
    inv = classical_invariants(d, 1)
    assert (inv.tb, inv.rot) == (-3, 0)


def test_torus_knot_validation():
    with pytest.raises(ValueError):
        torus_knot_2q(4)
    with pytest.raises(ValueError):
        torus_knot_2q(1)
