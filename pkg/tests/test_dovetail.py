import pytest
from hypothesis import given, strategies as st

from hilbert10.dovetail import (Claim, DiagonalValue, Halts, HaltCertificate, Unknown, always,
                                audit_halting_heuristic, budget_decider, cantor_pair,
                                cantor_unpair, diagonal_value, dovetail, iter_refutations,
                                membership_in_K, parse_decider)
from hilbert10.enumeration import index_of, machine_at
from hilbert10.errors import ResourceLimit
from hilbert10.machines import loop_machine, scan_machine
from hilbert10.tm import Halted, parse_machine, run

from oracles import naive_run

# First machine with state_in != q0: it never fires, so it acts like the empty machine.
N_E = index_of(parse_machine("q1 0 P q0"))
N_L = index_of(loop_machine())


def test_reference_indices():
    assert N_E == 24
    assert N_L == 12


class TestPairing:
    def test_values(self):
        assert cantor_pair(0, 0) == 0
        assert cantor_pair(1, 2) == 8

    def test_first_codes_walk_diagonals(self):
        assert [cantor_unpair(c) for c in range(6)] == [
            (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    @given(st.integers(0, 10**30), st.integers(0, 10**30))
    def test_roundtrip_large(self, n, x):
        assert cantor_unpair(cantor_pair(n, x)) == (n, x)

    @given(st.integers(0, 10**40))
    def test_unpair_surjective(self, code):
        assert cantor_pair(*cantor_unpair(code)) == code

    def test_negative(self):
        with pytest.raises(ValueError):
            cantor_pair(-1, 0)
        with pytest.raises(ValueError):
            cantor_unpair(-1)


class TestDovetail:
    def test_rounds_must_be_positive(self):
        with pytest.raises(ValueError):
            dovetail(0)

    def test_round_cap(self):
        with pytest.raises(ResourceLimit):
            dovetail(11, cap=10)

    def test_certificates_replay(self):
        certs = dovetail(15)
        assert certs
        for c in certs:
            assert c.replay()
            assert run(machine_at(c.machine_index), [c.input], c.steps) == Halted(c.output, c.steps)

    def test_emission_order(self):
        certs = dovetail(12)
        keys = [(c.round, c.machine_index, c.input) for c in certs]
        assert keys == sorted(keys)
        assert len({(c.machine_index, c.input) for c in certs}) == len(certs)

    def test_emission_round_guarantee(self):
        for c in dovetail(12):
            assert c.round == max(c.machine_index, c.input, c.steps, 1)

    def test_empty_like_machine(self):
        rounds = 30
        certs = {(c.machine_index, c.input): c for c in dovetail(rounds)}
        for x in range(rounds + 1):
            c = certs[(N_E, x)]
            assert c.steps == 0 and c.output == x
            assert c.round == max(N_E, x)

    def test_prefix_stable(self):
        assert dovetail(8) == dovetail(12)[:len(dovetail(8))]

    def test_coverage_against_naive(self):
        rounds = 14
        emitted = {(c.machine_index, c.input) for c in dovetail(rounds)}
        for n in range(rounds + 1):
            quads = [(q.state_in, q.symbol_in, q.action.letter, q.state_out)
                     for q in machine_at(n).quadruples]
            for x in range(rounds + 1):
                if naive_run(quads, x, rounds)[0] == "halted":
                    assert (n, x) in emitted

    def test_code(self):
        c = HaltCertificate(1, 2, 0, 2)
        assert c.code == 8


class TestMembership:
    def test_loop_is_unknown(self):
        assert membership_in_K(N_L, 3, 10**5) == Unknown(10**5)

    def test_empty_halts(self):
        v = membership_in_K(N_E, 7, 1)
        assert v == Halts(HaltCertificate(N_E, 7, 0, 7))

    @pytest.mark.parametrize("n", range(0, 80, 7))
    def test_monotone_in_fuel(self, n):
        for x in range(4):
            for fuel in range(0, 12):
                v = membership_in_K(n, x, fuel)
                if isinstance(v, Halts):
                    assert membership_in_K(n, x, fuel + 17) == v


class TestDiagonal:
    def test_empty_like(self):
        v = diagonal_value(N_E, 10)
        assert isinstance(v, DiagonalValue)
        assert v.value == N_E + 1

    def test_loop_unknown(self):
        assert diagonal_value(N_L, 10**5) == Unknown(10**5)

    @pytest.mark.parametrize("n", range(60))
    def test_value_is_successor(self, n):
        v = diagonal_value(n, 500)
        outcome = run(machine_at(n), [n], 500)
        if isinstance(outcome, Halted):
            assert v.value == outcome.output + 1
        else:
            assert isinstance(v, Unknown)


class TestAudit:
    def test_constant_diverges_refuted_at_empty_like(self):
        found = audit_halting_heuristic(always(Claim.DIVERGES), 200, 100)
        assert found is not None and found.evidence.replay()
        refuted = {c.n for c in iter_refutations(always(Claim.DIVERGES), 200, 100)}
        assert N_E in refuted

    def test_constant_converges_never_refuted(self):
        assert audit_halting_heuristic(always(Claim.CONVERGES), 200, 10**4) is None

    def test_budget_decider(self):
        fuel = 5
        scan = index_of(scan_machine())
        found = list(iter_refutations(budget_decider(fuel), 40, 10 * fuel))
        assert found
        for c in found:
            assert fuel < c.evidence.steps <= 10 * fuel
            assert c.evidence.replay()
        # the scan machine on input n takes n steps
        assert scan in {c.n for c in found}

    def test_budget_decider_not_refuted_without_slow_halters(self):
        # Every machine below index 5 halts within 5 steps on the diagonal.
        assert audit_halting_heuristic(budget_decider(5), 4, 50) is None

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            audit_halting_heuristic(always(Claim.DIVERGES), 11, 10, cap=10)

    def test_parse_decider(self):
        d, fuel = parse_decider("budget:7")
        assert fuel == 70
        assert parse_decider("diverges")[0](3, 3) is Claim.DIVERGES
        for bad in ("budget:x", "maybe", "diverges:3"):
            with pytest.raises(ValueError):
                parse_decider(bad)
