"""Count samples: the common currency of the fitting and testing machinery."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from citefit.exceptions import DomainError, EmptySampleError


@dataclass(frozen=True)
class CitationSample:
    """A multiset of offset-adjusted positive integer counts.

    Parameters
    ----------
    counts : array_like of int
        Counts on the support {1, 2, ...} (zeros become 1 once the usual
        offset of 1 has been applied at ingestion).
    offset_applied : int
        Offset added to the raw data before construction, recorded as
        provenance. Defaults to 1, the convention for citation counts.
    label : str
        Subject or provenance tag used in report rows.
    """

    counts: np.ndarray
    offset_applied: int = 1
    label: str = ""

    def __post_init__(self):
        arr = np.asarray(self.counts)
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            rounded = np.rint(arr)
            if not np.all(arr == rounded):
                raise DomainError("counts must be integers")
            arr = rounded
        arr = arr.astype(np.int64, copy=True).reshape(-1)
        if arr.size and arr.min() < 1:
            raise DomainError("counts must all be >= 1 (apply an offset first)")
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)
        if self.offset_applied < 0:
            raise DomainError("offset_applied must be non-negative")

    def __len__(self) -> int:
        return int(self.counts.size)

    @cached_property
    def sorted_counts(self) -> np.ndarray:
        out = np.sort(self.counts)
        out.flags.writeable = False
        return out

    @cached_property
    def unique_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct values and their multiplicities (both read-only)."""
        values, mult = np.unique(self.counts, return_counts=True)
        values.flags.writeable = False
        mult.flags.writeable = False
        return values, mult

    def require_nonempty(self) -> None:
        if self.counts.size == 0:
            raise EmptySampleError("operation requires a non-empty sample")

    def relabel(self, label: str) -> "CitationSample":
        return CitationSample(self.counts, self.offset_applied, label)


def as_sample(data, label: str = "", offset_applied: int = 1) -> CitationSample:
    """Coerce an array of counts (or pass through a CitationSample)."""
    if isinstance(data, CitationSample):
        return data
    return CitationSample(np.asarray(data), offset_applied=offset_applied, label=label)
