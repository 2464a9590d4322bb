"""Smoke tests of the python module: cross-library RNG agreement, a few
known values, and round trips through the simulation engine."""

import math

import pytest

import netbandit as nb


def test_philox_matches_numpy():
    # numpy's Philox increments counter word 0 (with carry) before its first
    # buffer fill, so philox_block(c, k) equals the first raw block of
    # numpy.random.Philox(counter=c-1 mod 2**256, key=k).
    from numpy.random import Philox

    cases = [
        ((0, 0, 0, 0), (0, 0)),
        ((5, 6, 7, 8), (11, 12)),
        ((1, 0, 2**40, 3), (2**63, 9)),
        ((2**64 - 1, 1, 2, 3), (4, 5)),
    ]
    for counter, key in cases:
        total = sum(w << (64 * i) for i, w in enumerate(counter))
        prev = (total - 1) % (1 << 256)
        key_int = key[0] | (key[1] << 64)
        expected = [int(w) for w in Philox(counter=prev, key=key_int).random_raw(4)]
        assert list(nb.philox_block(list(counter), list(key))) == expected


def test_rng_stream():
    s = nb.RngStream(seed=3, replication=1, node=2, round=55, draw=0)
    assert s.raw() == nb.RngStream(seed=3, replication=1, node=2, round=55).raw()
    assert 0.0 <= s.uniform() < 1.0
    assert s.raw() != nb.RngStream(seed=4, replication=1, node=2, round=55).raw()


def test_known_values():
    assert nb.ucb_index(0.5, 2, 1.0) == 0.5
    assert nb.ucb_index(0.0, 1, math.e**2) == pytest.approx(2.0)
    assert nb.bernoulli_kl(0.5, 0.7) == pytest.approx(0.0871767, abs=1e-6)
    assert nb.sample_threshold(0.2, 100000) == 2303
    assert nb.cg_closed_form(nb.Topology.circular, 6, 10, nb.CgDirection.maximize) == 30
    assert nb.cg_solve_brute(nb.generate("circular", 6), 2, nb.CgDirection.maximize) == 6
    inst = nb.make_instance([0.7, 0.5])
    assert inst.optimal_arm == 1
    assert inst.gaps == [0.0, pytest.approx(0.2)]
    assert nb.ucb_network_upper_bound(inst, 4.0, 5, 100000, 0.5) == pytest.approx(
        1847.75, abs=0.1
    )
    assert nb.fyl_upper_bound(inst, 1, 25, 100000, 0.5) == pytest.approx(494.744, abs=0.01)
    assert nb.universal_lower_bound(inst, 100000, 0.1) == pytest.approx(21.611, abs=0.01)


def test_exception_mapping():
    with pytest.raises(ValueError):
        nb.make_instance([0.7])  # needs at least two arms
    with pytest.raises(ValueError):
        nb.bernoulli_kl(0.5, 1.0)
    with pytest.raises(RuntimeError):
        nb.cg_solve_brute(nb.generate("fully_connected", 9), 2, nb.CgDirection.maximize)
    with pytest.raises(OSError):
        nb.read_edge_list("/nonexistent/path.edges")


def test_graphs_and_dominating_sets():
    net = nb.generate(nb.Topology.star, 25)
    assert net.m == 25
    assert net.adjacent(1, 25) and not net.adjacent(2, 3)
    assert net.closed_neighborhood(2) == [1, 2]
    ds = nb.greedy_dominating_set(net)
    assert ds.members == [1]
    assert nb.is_dominating_set(net, [1])
    # The exact solver is gated at m <= 20; run it on a smaller star.
    small = nb.generate(nb.Topology.star, 9)
    assert nb.brute_force_min_dominating_set(small).members == [1]
    with pytest.raises(RuntimeError):
        nb.brute_force_min_dominating_set(net)

    path = nb.from_edge_list_text("nodes 3\n1 2\n2 3\n")
    assert path.topology == nb.Topology.custom
    assert nb.greedy_dominating_set(path).members == [2]


def test_simulation_round_trip():
    cfg = nb.SimulationConfig(
        instance=nb.make_instance([0.7, 0.5]),
        network=nb.generate(nb.Topology.star, 4),
        policy=nb.PolicyKind.ucb_network,
        horizon=200,
        replications=3,
        seed=5,
    )
    nb.validate_config(cfg)
    tr1 = nb.simulate(cfg, 1)
    tr2 = nb.simulate(cfg, 1)
    assert tr1.final_regret == tr2.final_regret
    assert tr1.action_lists() == tr2.action_lists()
    assert tr1.action_lists() != nb.simulate(cfg, 2).action_lists()

    record = nb.regret_of_actions(cfg.instance, tr1.action_lists())
    assert record.network_total == pytest.approx(tr1.final_regret, abs=1e-9)
    for v in range(4):
        assert sum(tr1.final_stats[v].own_count) == 200

    agg_serial = nb.run_replications(cfg, jobs=1)
    agg_parallel = nb.run_replications(cfg, jobs=3)
    assert agg_serial.mean_final_regret == agg_parallel.mean_final_regret
    assert agg_serial.mean_regret == agg_parallel.mean_regret
    assert agg_serial.replications == 3

    curves = nb.curves_csv(agg_serial)
    lines = curves.splitlines()
    assert lines[0] == "round,mean_regret,std_regret,mean_percent_optimal"
    assert len(lines) == 201

    trace_doc = nb.trace_csv(tr1, 1)
    assert trace_doc.splitlines()[0] == "replication,round,node,action,reward"
    assert len(trace_doc.splitlines()) == 1 + 4 * 200


def test_fyl_copy_law():
    net = nb.generate(nb.Topology.star, 5)
    cfg = nb.SimulationConfig(
        instance=nb.make_instance([0.7, 0.5]),
        network=net,
        policy=nb.PolicyKind.fyl,
        horizon=100,
        seed=1,
        dominating_set=nb.greedy_dominating_set(net),
    )
    trace = nb.simulate(cfg, 1)
    for t in range(2, 101):
        for v in range(2, 6):
            assert trace.action(v, t) == trace.action(1, t - 1)
