"""
Input Fingerprints
==================

Records which inputs produced a run.

WHY THIS FILE EXISTS:
- A run directory must say which network and scenario it was built from
- File paths change; content hashes do not
- Two runs are only comparable when their inputs match

FINGERPRINT FIELDS:
1. package_version: installed version of this project
2. network_sha256 / scenario_sha256: hashes of the file contents
3. seed: the resolved run seed
"""

import hashlib
from dataclasses import asdict, dataclass
from importlib import metadata
from typing import Any, Dict, Optional

PACKAGE_NAME = "gaq-reroute"


@dataclass(frozen=True)
class InputFingerprint:
    package_version: Optional[str]
    network_path: str
    network_sha256: str
    scenario_path: str
    scenario_sha256: str
    seed: int

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def get_package_version() -> Optional[str]:
    """Installed distribution version, or None when running from a checkout."""
    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return None


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def fingerprint_inputs(
    network_path: str,
    network_text: str,
    scenario_path: str,
    scenario_text: str,
    seed: int,
) -> InputFingerprint:
    return InputFingerprint(
        package_version=get_package_version(),
        network_path=network_path,
        network_sha256=content_hash(network_text),
        scenario_path=scenario_path,
        scenario_sha256=content_hash(scenario_text),
        seed=seed,
    )
