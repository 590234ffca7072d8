"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import advice_rl


def test_gridworld_env_roundtrip():
    env = advice_rl.make_env("gridworld", stream_seed=7)
    obs = env.reset()
    assert obs.shape == (3, 9, 9)
    assert env.num_actions == 4
    assert obs[0, 0, 0] == 1.0
    assert set(np.unique(obs)) <= {0.0, 1.0}

    obs, reward, terminal, steps = env.step(1)
    assert obs.shape == (3, 9, 9)
    assert reward in (0.0, 1.0)
    assert steps == 1
    assert isinstance(terminal, bool)


def test_env_determinism():
    a = advice_rl.make_env("minibreakout", stream_seed=5)
    b = advice_rl.make_env("minibreakout", stream_seed=5)
    oa, ob = a.reset(), b.reset()
    np.testing.assert_array_equal(oa, ob)
    for action in [1, 3, 0, 3, 1, 0] * 20:
        if not a.episode_active:
            break
        ra, rb = a.step(action), b.step(action)
        np.testing.assert_array_equal(ra[0], rb[0])
        assert ra[1] == rb[1]


def test_shortest_path_teacher_and_distance():
    layout = advice_rl.canonical_layout()
    assert advice_rl.shortest_path_distance(layout, (0, 0), (0, 8)) == 12

    env = advice_rl.make_env("gridworld", stream_seed=11)
    teacher = advice_rl.ShortestPathTeacher()
    obs = env.reset()
    total = 0.0
    while env.episode_active:
        obs, reward, terminal, _ = env.step(teacher.advise(obs))
        total += reward
    assert total == 1.0  # the teacher reaches the goal (slips only delay it)


def test_student_agent_acts_and_trains():
    agent = advice_rl.StudentAgent("gridworld", seed=3)
    env = advice_rl.make_env("gridworld", stream_seed=3)
    obs = env.reset()
    for _ in range(1200):
        action = agent.act(obs)
        next_obs, reward, terminal, _ = env.step(action)
        agent.observe(obs, action, reward, next_obs, terminal)
        agent.train_tick()
        obs = env.reset() if terminal else next_obs
    assert agent.step_count == 1200
    assert agent.updates_done > 0
    q = agent.q_values(obs)
    assert q.shape == (4,)
    assert np.isfinite(q).all()


def test_rnd_novelty_decreases_with_updates():
    rnd = advice_rl.RndModule("gridworld", seed=9)
    obs = advice_rl.make_env("gridworld", stream_seed=1).reset()
    before = rnd.novelty(obs)
    assert before > 0
    for _ in range(50):
        rnd.update_single(obs)
    assert rnd.novelty(obs) < before


def test_metrics():
    assert advice_rl.compute_auc([2.0, 2.0, 2.0]) == pytest.approx(4.0)
    ramp = [i / 10 for i in range(11)]
    assert advice_rl.compute_auc(ramp) == pytest.approx(5.0)
    assert advice_rl.compute_final_score([0.5] * 60) == pytest.approx(0.5)


def test_tiny_session():
    record = advice_rl.run_session(
        "gridworld", "ea", budget=30, steps=400, eval_period=100, eval_episodes=2, seed=2
    )
    assert len(record["eval_scores"]) == 4
    assert record["advices_total"] == 30
    assert record["cumulative_advices"][:30] == list(range(1, 31))
    assert all(math.isfinite(s) for s in record["eval_scores"])

    none_record = advice_rl.run_session(
        "gridworld", "none", steps=300, eval_period=100, eval_episodes=2, teacher="none"
    )
    assert none_record["advices_total"] == 0
