import itertools
import random

import pytest

from lpalattice import (
    IntegersMod,
    LaurentIdeal,
    PrimeField,
    RingIdeal,
    ZZ,
)
from lpalattice.concrete import (
    FinitePathAlgebra,
    OracleError,
    crosscheck,
    enumerate_concrete_ideals,
    generated_ideal,
    lpa_multiply,
    toeplitz_graph,
    toeplitz_integer_reference,
)

import helpers


class TestAlgebraConstruction:
    def test_rejects_cycles(self):
        with pytest.raises(OracleError):
            FinitePathAlgebra(helpers.toeplitz(), IntegersMod(4))

    def test_rejects_infinite_bundles(self):
        with pytest.raises(OracleError):
            FinitePathAlgebra(helpers.omega_fork(), IntegersMod(4))

    def test_rejects_infinite_rings(self):
        with pytest.raises(OracleError):
            FinitePathAlgebra(helpers.fork(), ZZ)

    def test_two_vertex_chain_is_two_by_two(self):
        alg = FinitePathAlgebra(helpers.chain(2), IntegersMod(4))
        assert alg.dim == 4


class TestRelations:
    def test_vertex_idempotents(self):
        alg = FinitePathAlgebra(helpers.fork(), IntegersMod(6))
        for v in alg.graph.vertices:
            ev = alg.vertex_element(v)
            assert lpa_multiply(alg, ev, ev) == ev
            for w in alg.graph.vertices:
                if w != v:
                    assert lpa_multiply(alg, ev, alg.vertex_element(w)) == {}

    def test_edge_relations(self):
        alg = FinitePathAlgebra(helpers.chain(2), IntegersMod(4))
        e, estar = alg.edge_element("e0"), alg.ghost_element("e0")
        u, v = alg.vertex_element("v0"), alg.vertex_element("v1")
        # (E1), (E2)
        assert lpa_multiply(alg, u, e) == e == lpa_multiply(alg, e, v)
        assert lpa_multiply(alg, v, estar) == estar == lpa_multiply(alg, estar, u)
        # (CK1)
        assert lpa_multiply(alg, estar, e) == v
        # (CK2) at the regular vertex u
        assert lpa_multiply(alg, e, estar) == u

    def test_ck1_distinct_edges_annihilate(self):
        alg = FinitePathAlgebra(helpers.fork(), PrimeField(3))
        a, bstar = alg.edge_element("a"), alg.ghost_element("b")
        assert lpa_multiply(alg, bstar, a) == {}

    def test_matrix_units_for_the_chain(self):
        alg = FinitePathAlgebra(helpers.chain(2), IntegersMod(4))
        e = alg.edge_element("e0")
        estar = alg.ghost_element("e0")
        u = alg.vertex_element("v0")
        v = alg.vertex_element("v1")
        units = {(0, 0): u, (0, 1): e, (1, 0): estar, (1, 1): v}
        for (i, j), x in units.items():
            for (k, l), y in units.items():
                prod = lpa_multiply(alg, x, y)
                expected = units[(i, l)] if j == k else {}
                assert prod == expected

    def test_associativity_exhaustive_small(self):
        alg = FinitePathAlgebra(helpers.chain(2), PrimeField(2))
        singles = [alg.unit(i) for i in range(alg.dim)]
        for x, y, z in itertools.product(singles, repeat=3):
            left = lpa_multiply(alg, lpa_multiply(alg, x, y), z)
            right = lpa_multiply(alg, x, lpa_multiply(alg, y, z))
            assert left == right

    def test_ck2_expansion_through_symbols(self):
        # a regular vertex equals the sum of ee* over its outgoing edges
        alg = FinitePathAlgebra(helpers.fork(), IntegersMod(6))
        u = alg.vertex_element("u")
        total = {}
        for bundle in ("a", "b"):
            e, estar = alg.edge_element(bundle), alg.ghost_element(bundle)
            total = alg.add(total, lpa_multiply(alg, e, estar))
        assert total == u


class TestIdealEnumeration:
    def test_single_sink_counts_divisors(self):
        alg = FinitePathAlgebra(helpers.single_vertex(), IntegersMod(4))
        assert len(enumerate_concrete_ideals(alg)) == 3

    def test_chain_matches_base_ring(self):
        alg = FinitePathAlgebra(helpers.chain(2), IntegersMod(4))
        assert len(enumerate_concrete_ideals(alg)) == 3

    def test_fork_splits_per_sink(self):
        alg = FinitePathAlgebra(helpers.fork(), PrimeField(2))
        assert len(enumerate_concrete_ideals(alg)) == 4

    def test_products_commute(self):
        rng = random.Random(7)
        alg = FinitePathAlgebra(helpers.fork(), IntegersMod(6))
        ideals = enumerate_concrete_ideals(alg)
        for _ in range(60):
            a, b = rng.choice(ideals), rng.choice(ideals)
            assert a.product(b).divisors == b.product(a).divisors

    def test_closure_really_is_an_ideal(self):
        rng = random.Random(11)
        alg = FinitePathAlgebra(helpers.fork(), IntegersMod(6))
        for _ in range(20):
            x = {
                i: c
                for i in rng.sample(range(alg.dim), rng.randint(1, 3))
                if (c := rng.randrange(1, 6))
            }
            ideal = generated_ideal(alg, [x])
            assert ideal.contains_element(x)
            for i in range(alg.dim):
                for j in range(alg.dim):
                    sandwich = lpa_multiply(
                        alg, alg.unit(i), lpa_multiply(alg, x, alg.unit(j))
                    )
                    assert ideal.contains_element(sandwich)


class TestCrosscheck:
    def test_spec_examples(self):
        assert crosscheck(helpers.chain(2), IntegersMod(4)).ok
        assert crosscheck(helpers.fork(), IntegersMod(6)).ok
        assert crosscheck(helpers.single_vertex(), PrimeField(2)).ok

    def test_report_lines(self):
        rep = crosscheck(helpers.chain(2), IntegersMod(4))
        assert rep.lattice_size == rep.concrete_size == 3
        assert any("PASSED" in line for line in rep.lines())


class TestToeplitzReference:
    def _table(self, a, b):
        return {"{v}": RingIdeal(ZZ, a), "{u,v}": RingIdeal(ZZ, b)}

    def test_top_accepted(self):
        assert toeplitz_integer_reference(self._table(1, 1), LaurentIdeal.unit(ZZ))

    def test_known_instance_accepted(self):
        g = LaurentIdeal.parse(ZZ, "<4, 2x+2>")
        assert toeplitz_integer_reference(self._table(2, 4), g)

    def test_divisibility_violation_rejected(self):
        assert not toeplitz_integer_reference(self._table(4, 2), LaurentIdeal.parse(ZZ, "<2>"))

    def test_zero_pair(self):
        assert toeplitz_integer_reference(self._table(0, 0), LaurentIdeal.zero(ZZ))
        assert not toeplitz_integer_reference(self._table(0, 0), LaurentIdeal.parse(ZZ, "<x-1>"))

    def test_contract_escape_rejected(self):
        # residual <x-2>: multiplying by a=2 lets the contraction slip to (2)
        g = LaurentIdeal.parse(ZZ, "<4, 2x-4>")
        assert not toeplitz_integer_reference(self._table(2, 4), g)

    def test_graph_helper_matches_catalog(self):
        assert toeplitz_graph() == helpers.toeplitz()
