import math

import pytest

import bptrack as bt


def test_geometry_round_trip():
    tx = bt.Vec2(0.0, 30.0)
    rx = bt.Pose((0.0, -20.0), (1.0, 0.0))
    d = bt.relative_distance(tx, (40.0, 10.0), rx.position)
    assert d == pytest.approx(math.sqrt(2000.0))
    r = bt.ray_ellipse_range(tx, rx, (0.8, 0.6), d)
    assert r == pytest.approx(50.0)


def test_scenario_synthesis_shapes():
    cfg = bt.benchmark_scenario()
    cfg.n_steps = 25
    frames = bt.synthesize(cfg, seed=7)
    assert len(frames) == 25
    assert frames[0].step == 1
    assert all(f.direct is not None for f in frames)
    again = bt.synthesize(cfg, seed=7)
    assert [len(f.scatter) for f in frames] == [len(f.scatter) for f in again]


def test_tracker_runs_and_estimates():
    cfg = bt.benchmark_scenario()
    cfg.n_steps = 45
    truth = bt.make_ground_truth(cfg)
    frames = bt.synthesize(cfg, seed=3)
    tracker = bt.Tracker(bt.benchmark_tracker_config(), bt.TrackerMode.Full, seed=11)
    for t, f in zip(truth, frames):
        tracker.step(f, t.rx)
    est = tracker.estimate()
    assert est.tx is not None
    err = math.dist((est.tx.x, est.tx.y), (cfg.tx_position.x, cfg.tx_position.y))
    assert err < 10.0
    assert tracker.stage == bt.TrackerStage.Tracking


def test_ospa_examples():
    assert bt.ospa([], [(0.0, 0.0), (1.0, 1.0)], order=1.0, cutoff=10.0) == 10.0
    assert bt.ospa([(0.0, 0.0)], [(3.0, 4.0)], order=1.0, cutoff=10.0) == 5.0


def test_run_batch_aggregates():
    cfg = bt.default_run_config()
    cfg.scenario.n_steps = 40
    cfg.runs = 2
    cfg.seed = 5
    batch = bt.run_batch(cfg, threads=1)
    assert len(batch.runs) == 2
    assert len(batch.agg.tx_error_mean) == 40
    assert all(v >= 0.0 for v in batch.agg.tx_error_mean)
