"""Invertible affine coupling layers and their subnets.

A coupling layer splits its input into halves (u1, u2) and applies

    v1 = u1 * exp(xi2(u2)) + psi2(u2)
    v2 = u2 * exp(xi1(v1)) + psi1(v1)

which inverts exactly: v1 is available when recovering u2, and u2 when
recovering u1. Subnets are 3 dense layers with a leaky rectifier and
batch normalization after each activation; statistics are computed per
feature over the batch on every call, which keeps the round trip exact
because forward and inverse see the same batches.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn

from .errors import InvalidWidth, ShapeMismatch

# A non-monotone negative branch used by some reference configurations;
# it amplifies instead of leaking and tends to destabilize training.
# The default slope below is the conventional small positive leak.
NONMONOTONE_SLOPE = -5.5
DEFAULT_SLOPE = 0.01


@dataclass(frozen=True)
class CouplingLayerSpec:
    """Architecture of one coupling layer.

    width is the full layer width and must be even; each subnet maps one
    half to the other half's size through subnet_depth dense layers.

    scale_gamma is the initial gamma of the last normalizer inside the
    log-scale subnets xi. Normalization pins the std of xi's output to
    gamma, and exp(xi) compounds across stacked layers, so a small
    initial gamma keeps early training finite; gamma stays trainable.
    """

    width: int
    subnet_depth: int = 3
    negative_slope: float = DEFAULT_SLOPE
    bn_eps: float = 1e-5
    scale_gamma: float = 0.1

    def __post_init__(self):
        if self.width < 2 or self.width % 2 != 0:
            raise InvalidWidth(f"coupling width must be even and >= 2, got {self.width}")
        if self.subnet_depth < 1:
            raise InvalidWidth("subnet_depth must be >= 1")
        if self.scale_gamma <= 0:
            raise InvalidWidth("scale_gamma must be > 0")


def batch_normalize(x: torch.Tensor, gamma: torch.Tensor, beta: torch.Tensor,
                    eps: float = 1e-5) -> torch.Tensor:
    """Normalize per feature over the batch, then scale and shift.

    output = gamma / sqrt(Var[x] + eps) * x + (beta - gamma * E[x] / sqrt(Var[x] + eps))
    """
    if x.dim() != 2 or x.shape[0] < 2:
        raise ShapeMismatch("batch_normalize needs a 2d batch with at least 2 rows")
    mean = x.mean(dim=0)
    var = x.var(dim=0, unbiased=False)
    scale = gamma / torch.sqrt(var + eps)
    return scale * x + (beta - scale * mean)


class Subnet(nn.Module):
    """Dense stack mapping one half to the other: leaky rectifier and
    batch normalization after every layer."""

    def __init__(self, dim: int, spec: CouplingLayerSpec, out_gamma: float = 1.0):
        super().__init__()
        self.spec = spec
        self.linears = nn.ModuleList(
            [nn.Linear(dim, dim, dtype=torch.float64)
             for _ in range(spec.subnet_depth)])
        gammas = [torch.ones(dim, dtype=torch.float64)
                  for _ in range(spec.subnet_depth)]
        gammas[-1] = gammas[-1] * out_gamma
        self.gammas = nn.ParameterList([nn.Parameter(g) for g in gammas])
        self.betas = nn.ParameterList(
            [nn.Parameter(torch.zeros(dim, dtype=torch.float64))
             for _ in range(spec.subnet_depth)])
        # start at the identity coupling: the zeroed last layer feeds a
        # constant batch into the normalizer, which then emits beta = 0
        last = self.linears[-1]
        nn.init.zeros_(last.weight)
        nn.init.zeros_(last.bias)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        for linear, gamma, beta in zip(self.linears, self.gammas, self.betas):
            x = linear(x)
            x = nn.functional.leaky_relu(x, negative_slope=self.spec.negative_slope)
            x = batch_normalize(x, gamma, beta, self.spec.bn_eps)
        return x


def _check_halves(a: torch.Tensor, b: torch.Tensor) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"halves must match, got {tuple(a.shape)} and {tuple(b.shape)}")


def coupling_forward(u1, u2, subnets) -> tuple[torch.Tensor, torch.Tensor]:
    """Apply one coupling layer; subnets = (xi1, psi1, xi2, psi2)."""
    _check_halves(u1, u2)
    xi1, psi1, xi2, psi2 = subnets
    v1 = u1 * torch.exp(xi2(u2)) + psi2(u2)
    v2 = u2 * torch.exp(xi1(v1)) + psi1(v1)
    return v1, v2


def coupling_inverse(v1, v2, subnets) -> tuple[torch.Tensor, torch.Tensor]:
    """Exact algebraic inverse of coupling_forward."""
    _check_halves(v1, v2)
    xi1, psi1, xi2, psi2 = subnets
    u2 = (v2 - psi1(v1)) * torch.exp(-xi1(v1))
    u1 = (v1 - psi2(u2)) * torch.exp(-xi2(u2))
    return u1, u2


class CouplingLayer(nn.Module):
    """Trainable coupling layer over a full even-width vector."""

    def __init__(self, spec: CouplingLayerSpec):
        super().__init__()
        self.spec = spec
        half = spec.width // 2
        self.xi1 = Subnet(half, spec, out_gamma=spec.scale_gamma)
        self.psi1 = Subnet(half, spec)
        self.xi2 = Subnet(half, spec, out_gamma=spec.scale_gamma)
        self.psi2 = Subnet(half, spec)

    def subnets(self):
        return (self.xi1, self.psi1, self.xi2, self.psi2)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        half = self.spec.width // 2
        if x.shape[-1] != self.spec.width:
            raise ShapeMismatch(f"expected width {self.spec.width}, got {x.shape[-1]}")
        v1, v2 = coupling_forward(x[:, :half], x[:, half:], self.subnets())
        return torch.cat([v1, v2], dim=1)

    def inverse(self, y: torch.Tensor) -> torch.Tensor:
        half = self.spec.width // 2
        u1, u2 = coupling_inverse(y[:, :half], y[:, half:], self.subnets())
        return torch.cat([u1, u2], dim=1)
