"""Grid arithmetic tests, cross-checked against brute-force enumeration."""
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tactus.grid import (
    GridConfig,
    beats_to_seconds,
    circular_angle,
    fold,
    nearest_grid,
    seconds_to_beats,
    unfold,
)


def nearest_grid_oracle(onset_beats, cycle_beats, subdivision):
    """Enumerate every grid point of nearby repetitions, pick the closest.

    Works in absolute beats, so the circular wrap falls out for free.
    Returns (repetition, index, deviation).
    """
    slot_count = round(cycle_beats * subdivision)
    base_rep = math.floor(onset_beats / cycle_beats)
    best = None
    for rep in (base_rep - 1, base_rep, base_rep + 1):
        for idx in range(slot_count):
            t = rep * cycle_beats + idx / subdivision
            dev = onset_beats - t
            # Strict inequality keeps the earlier point on exact ties.
            if best is None or abs(dev) < abs(best[2]) - 1e-15:
                best = (rep, idx, dev)
    return best


class TestSecondsToBeats:
    def test_paper_tempo(self):
        # 120 BPM makes a quarter 0.5 seconds long.
        assert seconds_to_beats(0.5, 120) == 1.0

    def test_zero(self):
        assert seconds_to_beats(0.0, 77.3) == 0.0

    def test_derived(self):
        assert seconds_to_beats(1.25, 96) == pytest.approx(2.0, abs=1e-12)

    @given(st.floats(0, 1e4), st.floats(1, 400))
    def test_round_trip(self, t, bpm):
        assert beats_to_seconds(seconds_to_beats(t, bpm), bpm) == pytest.approx(t, rel=1e-12)


class TestFold:
    def test_basic(self):
        rep, phase = fold(9.3, 4)
        assert rep == 2
        assert phase == pytest.approx(1.3)

    def test_zero(self):
        assert fold(0, 4) == (0, 0)

    def test_no_premature_wrap(self):
        rep, phase = fold(3.999, 4)
        assert rep == 0
        assert phase == pytest.approx(3.999)

    @given(st.floats(0, 1e5), st.floats(0.25, 64))
    def test_unfold_reconstructs_exactly(self, onset, cycle):
        rep, phase = fold(onset, cycle)
        assert 0 <= phase < cycle
        assert unfold(rep, phase, cycle) == onset


class TestNearestGrid:
    def test_derived_example(self):
        point, dev = nearest_grid(1.3, 4, 2)
        assert point.index == 3  # the slot at beat 1.5
        assert point.beat_in_cycle == pytest.approx(1.5)
        assert dev == pytest.approx(-0.2)

    def test_exact_slot(self):
        point, dev = nearest_grid(2.5, 4, 2)
        assert dev == 0
        assert point.index == 5

    def test_wrap_to_next_repetition(self):
        point, dev = nearest_grid(3.98, 4, 1, repetition=7)
        assert (point.repetition, point.index) == (8, 0)
        assert dev == pytest.approx(-0.02)

    @given(
        st.floats(0, 16),
        st.sampled_from([1.0, 2.0, 3.0, 4.0, 6.0]),
        st.integers(1, 6),
    )
    def test_matches_enumeration_oracle(self, onset, cycle, subdivision):
        rep, phase = fold(onset, cycle)
        point, dev = nearest_grid(phase, cycle, subdivision, repetition=rep)
        o_rep, o_idx, o_dev = nearest_grid_oracle(onset, cycle, subdivision)
        assert dev == pytest.approx(o_dev, abs=1e-9)
        # On exact midpoints the oracle and implementation must agree too.
        assert (point.repetition, point.index) == (o_rep, o_idx)

    @given(st.floats(0, 4), st.integers(1, 8))
    def test_deviation_within_half_step(self, phase, subdivision):
        cycle = 4.0
        _, dev = nearest_grid(min(phase, math.nextafter(cycle, 0)), cycle, subdivision)
        assert abs(dev) <= cycle / (2 * subdivision) + 1e-12


class TestCircularAngle:
    def test_origin(self):
        assert circular_angle(0, 4) == 0

    def test_quarter_turn(self):
        assert circular_angle(1, 4) == pytest.approx(math.pi / 2)

    def test_derived(self):
        assert circular_angle(3.5, 4) == pytest.approx(7 * math.pi / 4)

    def test_monotone_and_full_turn(self):
        phases = [i * 0.01 for i in range(400)]
        angles = [circular_angle(p, 4) for p in phases]
        assert all(a < b for a, b in zip(angles, angles[1:]))
        assert angles[0] == 0
        # One full cycle spans exactly 2*pi.
        assert circular_angle(4 - 1e-9, 4) == pytest.approx(2 * math.pi)


class TestGridConfig:
    def test_rejects_bad_bpm(self):
        with pytest.raises(ValueError, match="bpm"):
            GridConfig(bpm=0)

    def test_rejects_fractional_slot_count(self):
        with pytest.raises(ValueError, match="cycle_beats"):
            GridConfig(bpm=120, subdivision=2, cycle_beats=4.3)

    def test_slot_count(self):
        cfg = GridConfig(bpm=120, subdivision=3, cycle_beats=4)
        assert cfg.slot_count == 12
        assert cfg.step_beats == pytest.approx(1 / 3)
