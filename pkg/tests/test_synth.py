import pytest

from rugscope.clusters import build_clusters
from rugscope.errors import InfeasibleSpec
from rugscope.patterns import (
    detect_chains,
    detect_major_flows,
    detect_stars,
)
from rugscope.profit import cluster_aware_profit, naive_profit
from rugscope.rugpull import scan
from rugscope.synth import PlantSpec, generate, save_generated


def detect_all(snapshot, result, p=0.9):
    stars = detect_stars(result.scammers, p, snapshot, result)
    chains = detect_chains(result.scammers, snapshot, result)
    flows = detect_major_flows(result.scammers, p, snapshot, result)
    return stars, chains, flows


class TestDeterminism:
    def test_same_spec_same_bytes(self, tmp_path):
        spec = PlantSpec(seed=7, stars_in=1, chains=2, flows=1, clusters=1,
                         wash_pools=1, noise_addresses=20, benign_pools=3,
                         dust_transfers=10)
        d1, _ = save_generated(spec, tmp_path / "a")
        d2, _ = save_generated(PlantSpec(**{**spec.__dict__}), tmp_path / "b")
        for name in ("manifest.json", "transfers.jsonl", "events.jsonl",
                     "pools.jsonl", "contracts.jsonl", "ground_truth.json"):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    def test_different_seed_differs(self, tmp_path):
        base = dict(stars_in=1, chains=1, noise_addresses=5)
        d1, _ = save_generated(PlantSpec(seed=1, **base), tmp_path / "a")
        d2, _ = save_generated(PlantSpec(seed=2, **base), tmp_path / "b")
        assert (d1 / "transfers.jsonl").read_bytes() != (d2 / "transfers.jsonl").read_bytes()


class TestValidation:
    @pytest.mark.parametrize("kwargs", [
        {"stars_in": 1, "star_size": (4, 6)},
        {"chains": 1, "chain_length": (1, 3)},
        {"flows": 1, "flow_width": (1, 2)},
        {"clusters": 1, "cluster_size": (1, 2)},
        {"funding_eth": (9, 3)},
    ])
    def test_infeasible_specs_rejected(self, kwargs):
        with pytest.raises(InfeasibleSpec):
            generate(PlantSpec(**kwargs))


class TestScamPoolRecovery:
    def test_planted_pools_exactly_recovered(self):
        spec = PlantSpec(seed=3, stars_out=1, chains=1, clusters=1,
                         noise_addresses=30, benign_pools=8, dust_transfers=20)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        assert {r.pool for r in result.records} == set(truth.scam_pools)
        assert result.scammers == frozenset(truth.scammers)
        for record in result.records:
            assert record.roles() == truth.scam_pools[record.pool]

    def test_negative_control_nothing_detected(self):
        spec = PlantSpec(seed=5, noise_addresses=100, benign_pools=12,
                         dust_transfers=50)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        assert result.records == []
        stars, chains, flows = detect_all(snap, result)
        assert stars == [] and chains == [] and flows == []


class TestPatternRecovery:
    def test_exact_star_recovery_all_kinds(self):
        spec = PlantSpec(seed=11, stars_in=2, stars_out=2, stars_in_out=1,
                         noise_addresses=40, dust_transfers=30)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        stars, chains, flows = detect_all(snap, result)
        got = {(s.kind.value, s.center, s.satellites) for s in stars}
        want = {(s.kind, s.center, s.satellites) for s in truth.stars}
        assert got == want
        assert chains == [] and flows == []

    def test_exact_chain_recovery(self):
        spec = PlantSpec(seed=13, chains=4, chain_length=(2, 10),
                         noise_addresses=30, dust_transfers=20)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        stars, chains, flows = detect_all(snap, result)
        assert {c.members for c in chains} == {c.members for c in truth.chains}
        assert stars == [] and flows == []

    def test_exact_flow_recovery(self):
        spec = PlantSpec(seed=17, flows=5, flow_width=(2, 5),
                         noise_addresses=30, dust_transfers=20)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        stars, chains, flows = detect_all(snap, result)
        got = {(f.vertices, f.width, f.fund_in, f.fund_out) for f in flows}
        want = {(f.vertices, f.width, f.fund_in, f.fund_out) for f in truth.flows}
        assert got == want
        assert stars == [] and chains == []
        for flow in flows:
            planted = next(p for p in truth.flows if p.vertices == flow.vertices)
            assert {v for v, r in flow.roles.items() if r.value == "input"} == planted.inputs
            assert {v for v, r in flow.roles.items() if r.value == "output"} == planted.outputs

    def test_mixed_bag_keeps_kinds_apart(self):
        spec = PlantSpec(seed=19, stars_in=1, stars_out=1, chains=3, flows=3,
                         noise_addresses=50, dust_transfers=40)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        stars, chains, flows = detect_all(snap, result)
        assert len(stars) == 2
        assert {c.members for c in chains} == {c.members for c in truth.chains}
        assert {f.vertices for f in flows} == {f.vertices for f in truth.flows}


class TestClusterRecovery:
    def test_planted_clusters_exact(self):
        spec = PlantSpec(seed=23, clusters=4, cluster_size=(2, 8),
                         noise_addresses=20, dust_transfers=10)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        assert {c.members for c in clusters.clusters} == set(truth.clusters)


class TestWashPools:
    def test_planted_wash_arithmetic(self):
        spec = PlantSpec(seed=29, wash_pools=2, noise_addresses=10)
        dataset, truth = generate(spec)
        snap = dataset.to_snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        for pool, planted in truth.wash_pools.items():
            cid = clusters.cluster_of(planted.owner)
            cluster = clusters.by_id(cid)
            assert planted.cluster_members <= cluster.members
            naive = naive_profit(result.by_pool[pool], snap)
            assert naive.delta_naive == planted.delta_naive
            aware = cluster_aware_profit(result.by_pool[pool], cluster, snap,
                                         result.scammers)
            assert aware.delta_cluster == planted.delta_cluster
            assert aware.z_wash == planted.wash_in_total


class TestSpecFile:
    def test_from_toml(self, tmp_path):
        config = tmp_path / "plant.toml"
        config.write_text(
            'seed = 4\nchains = 2\nchain_length = [2, 5]\nnoise_addresses = 7\n'
        )
        spec = PlantSpec.from_file(config)
        assert spec.seed == 4
        assert spec.chain_length == (2, 5)

    def test_from_json(self, tmp_path):
        config = tmp_path / "plant.json"
        config.write_text('{"seed": 9, "flows": 1, "flow_width": [2, 3]}')
        spec = PlantSpec.from_file(config)
        assert spec.flows == 1
        assert spec.flow_width == (2, 3)

    def test_unknown_key_rejected(self, tmp_path):
        config = tmp_path / "plant.json"
        config.write_text('{"seeds": 9}')
        with pytest.raises(InfeasibleSpec):
            PlantSpec.from_file(config)
