"""Autoencoder construction, shape contracts, gradient correctness."""

import numpy as np
import pytest
import torch

from nnvalidate import InvalidWidth, build_autoencoder

from conftest import randomize


class TestBuild:
    def test_shapes(self):
        model = build_autoencoder(8, 4)
        assert model.dense_in.weight.shape == (4, 8)
        assert model.dense_out.weight.shape == (8, 4)
        assert len(model.couplings) == 5
        x = torch.randn(9, 8, dtype=torch.float64)
        assert model(x).shape == (9, 8)

    def test_hidden_layers_override(self):
        model = build_autoencoder(6, 2, hidden_layers=2)
        assert len(model.couplings) == 2

    @pytest.mark.parametrize("bottleneck", [0, 1, 3, 5])
    def test_rejects_odd_bottleneck(self, bottleneck):
        with pytest.raises(InvalidWidth):
            build_autoencoder(8, bottleneck)

    def test_rejects_narrow_input(self):
        with pytest.raises(InvalidWidth):
            build_autoencoder(3, 4)

    def test_rejects_no_hidden_layers(self):
        with pytest.raises(InvalidWidth):
            build_autoencoder(8, 4, hidden_layers=0)

    def test_forward_deterministic(self):
        x = torch.randn(16, 8, dtype=torch.float64)
        outs = []
        for _ in range(2):
            torch.manual_seed(21)
            model = build_autoencoder(8, 4)
            randomize(model, seed=22, lo=-0.5, hi=0.5)
            with torch.no_grad():
                outs.append(model(x.clone()))
        assert torch.equal(outs[0], outs[1])


def central_difference(model, x, y, param, index, h=1e-6):
    """Finite-difference gradient of the MSE loss at one weight."""
    loss_fn = torch.nn.MSELoss()
    vals = []
    with torch.no_grad():
        for delta in (h, -h):
            param.data.view(-1)[index] += delta
            vals.append(float(loss_fn(model(x), y)))
            param.data.view(-1)[index] -= delta
    return (vals[0] - vals[1]) / (2.0 * h)


def test_gradient_matches_finite_differences():
    # analytic gradients against a central-difference oracle at 5
    # sampled weights, relative error below 1e-3
    torch.manual_seed(31)
    model = build_autoencoder(8, 4, hidden_layers=2)
    randomize(model, seed=32, lo=-0.5, hi=0.5)
    x = torch.randn(32, 8, dtype=torch.float64)
    y = torch.randn(32, 8, dtype=torch.float64)
    loss = torch.nn.MSELoss()(model(x), y)
    loss.backward()

    params = [p for p in model.parameters() if p.grad is not None]
    rng = np.random.default_rng(33)
    checked = 0
    while checked < 5:
        p = params[rng.integers(len(params))]
        idx = int(rng.integers(p.numel()))
        analytic = float(p.grad.view(-1)[idx])
        if abs(analytic) < 1e-6:
            continue  # relative error is meaningless at a flat coordinate
        numeric = central_difference(model, x, y, p, idx)
        assert abs(analytic - numeric) <= 1e-3 * max(abs(numeric), 1e-12)
        checked += 1
