import os
from dataclasses import dataclass
from enum import Enum
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as get_version

from packaging.version import InvalidVersion, Version

__all__ = [
    'ENGINE_VERSION',
    'FORMAT_VERSION',
    'FORMAT_POLICY',
    'VersionStatus',
    'FormatPolicy',
    'is_disabled_version_check',
    'check_format_version',
    'format_unsupported_message',
]

try:
    ENGINE_VERSION = get_version("lattice-spanners")
except PackageNotFoundError:
    ENGINE_VERSION = "0.0.0-dev"

FORMAT_VERSION = "1.0"


class VersionStatus(Enum):
    OK = "ok"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class FormatPolicy:
    min_supported: Version
    current: Version


FORMAT_POLICY = FormatPolicy(
    min_supported=Version("1.0"),
    current=Version(FORMAT_VERSION),
)


def is_disabled_version_check() -> bool:
    return os.environ.get('LATTICE_DISABLE_VERSION_CHECK', '0') == '1'


def check_format_version(version: str) -> VersionStatus:
    if is_disabled_version_check():
        return VersionStatus.OK
    try:
        v = Version(version)
    except InvalidVersion:
        return VersionStatus.UNSUPPORTED
    # same major as the reader, not older than the oldest reader-compatible format
    if v < FORMAT_POLICY.min_supported or v.major != FORMAT_POLICY.current.major:
        return VersionStatus.UNSUPPORTED
    return VersionStatus.OK


def format_unsupported_message(version: str) -> str:
    return (
        f"certificate format {version!r} is not supported: "
        f"this reader accepts {FORMAT_POLICY.min_supported.public} "
        f"up to {FORMAT_POLICY.current.major}.x"
    )
