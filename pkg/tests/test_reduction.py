import itertools

import numpy as np
import pytest

from hcbasis.errors import ValidationError
from hcbasis.graph import (CnfFormula, is_hamiltonian_cycle, serialize_graph,
                           serialize_path_decomposition, to_nice_decomposition,
                           validate_decomposition)
from hcbasis.oracles import brute_sat, reference_pw_dp
from hcbasis.pathwidth import solve_pw
from hcbasis.reduction import (GadgetSpec, build_induced_subgraph_gadget, certify_assignment,
                               check_instance, gadget_completions, realised_relation, reduce,
                               verify_witness, witness_json)


def test_single_positive_literal_is_hamiltonian():
    out = reduce(CnfFormula(1, ((1,),)))
    cycle = certify_assignment(out, [True])
    assert is_hamiltonian_cycle(out.graph, cycle)
    assert certify_assignment(out, [False]) is None


def test_contradiction_is_not_hamiltonian():
    f = CnfFormula(1, ((1,), (-1,)))
    out = reduce(f)
    assert solve_pw(out.graph, out.decomposition, reps=30, max_width=out.width_bound) is False
    npd = to_nice_decomposition(out.graph, out.decomposition)
    assert reference_pw_dp(out.graph, npd, max_width=out.width_bound, max_n=out.graph.n) == 0
    assert check_instance(f, out).hamiltonian is False


def test_negative_tier_is_recorded():
    f = CnfFormula(1, ((1,), (-1,)))
    out = reduce(f)
    # even the smallest instance exceeds the Held-Karp size, so the exact DP decides it
    assert out.graph.n > 18
    assert check_instance(f, out).level == "exact:pairing-dp"
    assert check_instance(f, out, exact_width=0).level == "monte-carlo:reps=30"
    assert check_instance(CnfFormula(1, ((1,),)), reduce(CnfFormula(1, ((1,),)))).level == "witness"


def test_witness_rejects_a_swapped_edge():
    f = CnfFormula(2, ((1, 2), (-1,)))
    out = reduce(f)
    cycle = certify_assignment(out, [False, True])
    assert verify_witness(out.graph, cycle)
    for i in range(len(cycle) - 1):
        bad = cycle[:]
        bad[i], bad[i + 1] = bad[i + 1], bad[i]
        if not all(out.graph.has_edge(bad[k], bad[(k + 1) % len(bad)]) for k in range(len(bad))):
            assert not verify_witness(out.graph, bad)
            break
    else:
        pytest.fail("no swap produced a non-edge")


def test_all_two_variable_two_clause_formulas():
    lits = [1, -1, 2, -2]
    clauses = [c for r in (1, 2) for c in itertools.combinations(lits, r)]
    for pair in itertools.combinations(clauses, 2):
        f = CnfFormula(2, pair)
        out = reduce(f)
        assert validate_decomposition(out.graph, out.decomposition) <= out.width_bound
        npd = to_nice_decomposition(out.graph, out.decomposition)
        count = reference_pw_dp(out.graph, npd, max_width=out.width_bound, max_n=out.graph.n)
        assert (count > 0) == (brute_sat(f) is not None), f


def test_every_satisfying_assignment_certifies():
    f = CnfFormula(3, ((1, -2), (2, 3), (-1, -3), (1, 2, 3)))
    out = reduce(f)
    for bits in itertools.product((False, True), repeat=3):
        cycle = certify_assignment(out, bits)
        if f.satisfied_by(bits):
            assert verify_witness(out.graph, cycle)
        else:
            assert cycle is None


def test_duplicate_and_tautological_literals():
    f = CnfFormula(2, ((1, 1, -1), (2, 2)))
    out = reduce(f)
    assert verify_witness(out.graph, certify_assignment(out, [False, True]))
    assert certify_assignment(out, [True, False]) is None


def test_determinism_and_linear_size():
    f = CnfFormula(3, ((1, -2, 3), (-1, 2), (3,)))
    a, b = reduce(f), reduce(f)
    assert serialize_graph(a.graph) == serialize_graph(b.graph)
    assert serialize_path_decomposition(a.decomposition, a.graph.n) == \
        serialize_path_decomposition(b.decomposition, b.graph.n)
    assert witness_json(a) == witness_json(b)
    sizes = [reduce(CnfFormula(3, ((1, 2, 3),) * c)).graph.n for c in range(1, 7)]
    steps = {y - x for x, y in zip(sizes, sizes[1:])}
    assert len(steps) == 1


def test_width_within_bound_on_random_formulas():
    rng = np.random.default_rng(4)
    for _ in range(100):
        nv = int(rng.integers(1, 9))
        clauses = tuple(tuple(int(rng.choice([-1, 1]) * rng.integers(1, nv + 1))
                              for _ in range(int(rng.integers(1, 4))))
                        for _ in range(int(rng.integers(1, 11))))
        out = reduce(CnfFormula(nv, clauses))
        assert validate_decomposition(out.graph, out.decomposition) <= out.width_bound
        assert out.metadata["width_actual"] == out.decomposition.width


def test_parameter_range():
    with pytest.raises(ValidationError):
        reduce(CnfFormula(1, ((1,),)), group_size=2)
    with pytest.raises(ValidationError):
        reduce(CnfFormula(1, ()))
    with pytest.raises(ValueError):
        certify_assignment(reduce(CnfFormula(2, ((1,),))), [True])


def test_gadget_identity_relation():
    spec = GadgetSpec(1, frozenset({(1,)}))
    frag = build_induced_subgraph_gadget(spec)
    assert realised_relation(frag) == spec.relation
    assert gadget_completions(frag, (0,)) == []


def test_gadget_all_false_relation():
    frag = build_induced_subgraph_gadget(GadgetSpec(2, frozenset()))
    assert all(not gadget_completions(frag, s) for s in itertools.product((0, 1), repeat=2))


def test_gadget_exactly_one_relations():
    for k in (1, 2, 3):
        spec = GadgetSpec.exactly_one(k)
        assert realised_relation(build_induced_subgraph_gadget(spec)) == spec.relation
    spec = GadgetSpec.exactly_one(3, allowed=[0, 2])
    assert realised_relation(build_induced_subgraph_gadget(spec)) == spec.relation


def test_unrealisable_gadget_spec():
    with pytest.raises(ValidationError, match="not realisable"):
        build_induced_subgraph_gadget(GadgetSpec(2, frozenset({(1, 1)})))
    with pytest.raises(ValidationError):
        GadgetSpec(2, frozenset({(1,)}))


def test_one_variable_round_trip_through_gadget():
    for clauses, sat in [(((1,),), True), (((-1,),), True), (((1,), (-1,)), False)]:
        f = CnfFormula(1, clauses)
        res = check_instance(f, reduce(f))
        assert res.hamiltonian is sat
