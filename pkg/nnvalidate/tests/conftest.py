"""Shared helpers for the test suite."""

import torch


def randomize(module, seed, lo=-1.0, hi=1.0):
    """Overwrite every parameter with seeded uniform noise."""
    torch.manual_seed(seed)
    with torch.no_grad():
        for p in module.parameters():
            p.copy_(torch.empty_like(p).uniform_(lo, hi))
