"""Python bindings for the tirl planning-model library."""

from ._tirl import (
    Environment,
    TirlError,
    __version__,
    boltzmann,
    chain_probe,
    naive_q,
    reproduce,
    reproduce_targets,
    resolute_q,
    run_cli,
    shape,
    shaping_potential,
    sophisticated,
)

__all__ = [
    "Environment",
    "TirlError",
    "__version__",
    "boltzmann",
    "chain_probe",
    "naive_q",
    "reproduce",
    "reproduce_targets",
    "resolute_q",
    "run_cli",
    "shape",
    "shaping_potential",
    "sophisticated",
]
