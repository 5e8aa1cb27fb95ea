"""Width sweeps for invertible-coupling denoising autoencoders.

Consumes the upstream dimension estimator's artifacts (point-cloud CSV
and estimate JSON with a recommended width interval) and measures how
training stability varies with the bottleneck width.
"""

from .autoencoder import Autoencoder, build_autoencoder
from .coupling import (DEFAULT_SLOPE, NONMONOTONE_SLOPE, CouplingLayer,
                       CouplingLayerSpec, Subnet, batch_normalize,
                       coupling_forward, coupling_inverse)
from .dataset import (NoisyDataset, load_points_csv, load_width_interval,
                      make_dataset, sample_torus)
from .errors import (InvalidWidth, MalformedInput, NnvalidateError,
                     ShapeMismatch)
from .sweep import (DEFAULT_SPIKE_FACTOR, DEFAULT_WINDOW, SweepResult,
                    explosion_score, save_summary_json, save_sweep_csv,
                    stability_report, train_sweep)

__version__ = "0.1.0"

__all__ = [
    "Autoencoder", "build_autoencoder",
    "DEFAULT_SLOPE", "NONMONOTONE_SLOPE", "CouplingLayer",
    "CouplingLayerSpec", "Subnet", "batch_normalize",
    "coupling_forward", "coupling_inverse",
    "NoisyDataset", "load_points_csv", "load_width_interval",
    "make_dataset", "sample_torus",
    "InvalidWidth", "MalformedInput", "NnvalidateError", "ShapeMismatch",
    "DEFAULT_SPIKE_FACTOR", "DEFAULT_WINDOW", "SweepResult",
    "explosion_score", "save_summary_json", "save_sweep_csv",
    "stability_report", "train_sweep",
    "__version__",
]
