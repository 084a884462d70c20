import numpy as np
import pytest

from fpclogit.errors import DegenerateResponse, InvalidArgument
from fpclogit.logit import DesignMatrix, fit_logit
from fpclogit.stepwise import stepwise_select


def make_candidates(columns):
    return DesignMatrix.build([(name, np.asarray(v, dtype=float)) for name, v in columns])


def penalized(fit, k=2.0):
    return fit.residual_deviance + k * len(fit.coef)


class TestStepwiseSelect:
    def test_perfect_predictor_selected_first_round(self):
        rng = np.random.default_rng(0)
        signal = rng.normal(size=40)
        y = (signal > 0.1).astype(float)
        noise = rng.normal(size=40)
        candidates = make_candidates([("signal", signal), ("noise", noise)])
        fit, trace = stepwise_select(y, candidates)
        assert trace.steps[0].action == "add"
        assert trace.steps[0].name == "signal"
        assert "signal" in trace.final_names
        null_fit = fit_logit(y, candidates.subset([]))
        assert trace.steps[0].aic < penalized(null_fit)

    def test_pure_noise_with_strong_penalty_selects_nothing(self):
        rng = np.random.default_rng(1)
        n = 200
        y = (rng.random(n) < 0.5).astype(float)
        if y.min() == y.max():
            pytest.skip("degenerate draw")
        candidates = make_candidates([(f"n{j}", rng.normal(size=n)) for j in range(6)])
        fit, trace = stepwise_select(y, candidates, k=20.0)
        assert trace.final_names == ()
        assert len(fit.coef) == 1

    def test_final_aic_not_above_null(self):
        rng = np.random.default_rng(2)
        n = 80
        x = rng.normal(size=(n, 4))
        y = (x[:, 0] + 0.5 * rng.normal(size=n) > 0).astype(float)
        candidates = make_candidates([(f"x{j}", x[:, j]) for j in range(4)])
        fit, trace = stepwise_select(y, candidates)
        null_fit = fit_logit(y, candidates.subset([]))
        assert trace.final_aic <= penalized(null_fit) + 1e-12

    def test_deterministic_traces(self):
        rng = np.random.default_rng(3)
        n = 60
        x = rng.normal(size=(n, 5))
        y = (x[:, 1] - x[:, 3] + rng.normal(size=n) > 0).astype(float)
        candidates = make_candidates([(f"x{j}", x[:, j]) for j in range(5)])
        first = stepwise_select(y, candidates)[1]
        second = stepwise_select(y, candidates)[1]
        assert first == second

    def test_aic_strictly_decreasing_along_trace(self):
        rng = np.random.default_rng(4)
        n = 70
        x = rng.normal(size=(n, 5))
        y = (0.8 * x[:, 0] + 0.8 * x[:, 2] + rng.normal(size=n) > 0).astype(float)
        candidates = make_candidates([(f"x{j}", x[:, j]) for j in range(5)])
        _, trace = stepwise_select(y, candidates)
        aics = [s.aic for s in trace.steps]
        assert all(b < a for a, b in zip(aics, aics[1:]))

    def test_final_refit_reproduces_aic(self):
        rng = np.random.default_rng(5)
        n = 70
        x = rng.normal(size=(n, 4))
        y = (x[:, 0] - x[:, 1] + rng.normal(size=n) > 0).astype(float)
        candidates = make_candidates([(f"x{j}", x[:, j]) for j in range(4)])
        _, trace = stepwise_select(y, candidates)
        refit = fit_logit(y, candidates.subset(list(trace.final_names)))
        assert penalized(refit) == pytest.approx(trace.final_aic, abs=1e-8)

    def test_local_optimality(self):
        rng = np.random.default_rng(6)
        n = 90
        x = rng.normal(size=(n, 5))
        y = (x[:, 0] + 0.6 * x[:, 4] + rng.normal(size=n) > 0.2).astype(float)
        candidates = make_candidates([(f"x{j}", x[:, j]) for j in range(5)])
        _, trace = stepwise_select(y, candidates)
        members = list(trace.final_names)
        for name in set(f"x{j}" for j in range(5)) - set(members):
            alt = fit_logit(y, candidates.subset(members + [name]))
            assert penalized(alt) >= trace.final_aic - 1e-10
        for name in members:
            alt = fit_logit(y, candidates.subset([m for m in members if m != name]))
            assert penalized(alt) >= trace.final_aic - 1e-10

    def test_rank_deficient_candidate_skipped_and_recorded(self):
        rng = np.random.default_rng(7)
        n = 50
        x = rng.normal(size=n)
        y = (x + 0.5 * rng.normal(size=n) > 0).astype(float)
        candidates = make_candidates([("x", x), ("copy", x * 3.0)])
        fit, trace = stepwise_select(y, candidates)
        # whichever of the two collinear columns enters, the other is skipped later
        skipped_names = {name for _, name in trace.skipped}
        assert len(trace.final_names) == 1
        assert skipped_names == ({"x", "copy"} - set(trace.final_names))

    def test_empty_candidates_rejected(self):
        d = DesignMatrix.build([], n=10)
        with pytest.raises(InvalidArgument):
            stepwise_select(np.array([0.0, 1.0] * 5), d)

    def test_constant_response_rejected(self):
        rng = np.random.default_rng(8)
        candidates = make_candidates([("x", rng.normal(size=10))])
        with pytest.raises(DegenerateResponse):
            stepwise_select(np.ones(10), candidates)
