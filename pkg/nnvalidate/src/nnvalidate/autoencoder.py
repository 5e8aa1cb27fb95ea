"""Denoising autoencoder: dense projection in, invertible middle, dense
projection out.

Only the first and last dense layers are non-invertible; the stack of
coupling layers in between preserves information at the bottleneck
width, so the bottleneck alone decides how much structure survives.
"""

from __future__ import annotations

import torch
from torch import nn

from .coupling import DEFAULT_SLOPE, CouplingLayer, CouplingLayerSpec
from .errors import InvalidWidth


class Autoencoder(nn.Module):
    """Sigmoid dense-in, hidden invertible coupling stack, linear dense-out."""

    def __init__(self, input_dim: int, bottleneck: int, hidden_layers: int,
                 negative_slope: float, scale_gamma: float):
        super().__init__()
        self.input_dim = input_dim
        self.bottleneck = bottleneck
        self.dense_in = nn.Linear(input_dim, bottleneck, dtype=torch.float64)
        spec = CouplingLayerSpec(width=bottleneck, negative_slope=negative_slope,
                                 scale_gamma=scale_gamma)
        self.couplings = nn.ModuleList(
            [CouplingLayer(spec) for _ in range(hidden_layers)])
        self.dense_out = nn.Linear(bottleneck, input_dim, dtype=torch.float64)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h = torch.sigmoid(self.dense_in(x))
        for layer in self.couplings:
            h = layer(h)
        return self.dense_out(h)


def build_autoencoder(input_dim: int, bottleneck: int, hidden_layers: int = 5,
                      negative_slope: float = DEFAULT_SLOPE,
                      scale_gamma: float = 0.1) -> Autoencoder:
    """Construct the sweep architecture at one bottleneck width.

    Raises:
        InvalidWidth: odd or out-of-range bottleneck.
    """
    if bottleneck < 2 or bottleneck % 2 != 0:
        raise InvalidWidth(f"bottleneck must be even and >= 2, got {bottleneck}")
    if input_dim < bottleneck:
        raise InvalidWidth(f"input_dim {input_dim} must be >= bottleneck {bottleneck}")
    if hidden_layers < 1:
        raise InvalidWidth("hidden_layers must be >= 1")
    return Autoencoder(input_dim, bottleneck, hidden_layers, negative_slope,
                       scale_gamma)
