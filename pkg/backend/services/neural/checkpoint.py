"""
Model Checkpoints
=================

Writes and reads a QModel with its Adam state as a numpy .npz archive.

LAYOUT:
    param/<name>        every parameter tensor
    adam/m/<name>       first moments
    adam/v/<name>       second moments
    adam/step           0-d integer
    meta/architecture   JSON string of QModel.architecture

Arrays are stored as-is, so a save/load round trip is bit-exact. Loading
without pickles keeps foreign archives from executing code.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np

from backend.core.exceptions import CheckpointError
from backend.services.neural.adam import AdamState
from backend.services.neural.model import QModel

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def save_checkpoint(path: PathLike, model: QModel, adam: Optional[AdamState] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    arrays: Dict[str, np.ndarray] = {
        f"param/{name}": value for name, value in model.params.items()
    }
    if adam is not None:
        arrays.update({f"adam/m/{name}": value for name, value in adam.m.items()})
        arrays.update({f"adam/v/{name}": value for name, value in adam.v.items()})
        arrays["adam/step"] = np.array(adam.step, dtype=np.int64)
    arrays["meta/architecture"] = np.array(json.dumps(model.architecture, sort_keys=True))

    with path.open("wb") as handle:
        np.savez(handle, **arrays)
    logger.info(f"Checkpoint written path={path} tensors={len(model.params)}")
    return path


def load_checkpoint(
    path: PathLike, expected: Optional[QModel] = None
) -> Tuple[QModel, Optional[AdamState]]:
    """
    Read a checkpoint, optionally checking it against an expected architecture.

    Raises:
        CheckpointError: unreadable file, missing tensors or architecture mismatch
    """
    path = Path(path)
    try:
        archive = np.load(path, allow_pickle=False)
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"cannot read checkpoint: {exc}", path=str(path)) from exc

    with archive:
        if "meta/architecture" not in archive.files:
            raise CheckpointError("checkpoint has no architecture record", path=str(path))
        architecture = json.loads(str(archive["meta/architecture"]))
        params = {
            key[len("param/"):]: archive[key].copy()
            for key in archive.files
            if key.startswith("param/")
        }
        adam: Optional[AdamState] = None
        if "adam/step" in archive.files:
            adam = AdamState(
                m={name: archive[f"adam/m/{name}"].copy() for name in params},
                v={name: archive[f"adam/v/{name}"].copy() for name in params},
                step=int(archive["adam/step"]),
            )

    model = QModel(
        params=params,
        feature_count=int(architecture["feature_count"]),
        leaky_slope=float(architecture["leaky_slope"]),
    )
    if model.architecture != architecture:
        raise CheckpointError("stored tensors disagree with stored architecture", path=str(path))
    if expected is not None and expected.architecture != architecture:
        raise CheckpointError(
            "checkpoint architecture does not match the configured model", path=str(path)
        )
    return model, adam
