"""Block decomposition: complexity of strings and arrays from a CTM table.

An object is cut into non-overlapping blocks small enough for table lookup
and scored as

    BDM = sum over unique blocks of [ ctm(block) + log2(multiplicity) ]

so repeating a block k times costs log2(k) extra bits rather than k full
copies.  Blocks longer than anything the enumeration produced fall back to
the table's missing-block value (max at that length plus one bit).

2D arrays are tiled into d x d blocks and each tile is flattened row-major
into a string; ternary cells are first expanded to two bits each
(0 -> "00", 1 -> "01", -1 -> "10"), which lets a single binary table score
mixed-state lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ctm import CtmTable

DEFAULT_BLOCK_LEN_1D = 6
# With the shipped (3,2) table the longest produced output is 7 cells, so
# 3x3 tiles (9-cell strings) would have no coverage at all; 2x2 tiles are
# fully covered.
DEFAULT_BLOCK_SIDE_2D = 2

_BYTES_TO_01 = bytes.maketrans(b"\x00\x01", b"01")


@dataclass(frozen=True)
class BlockPartition:
    """Unique blocks with multiplicities, in order of first appearance."""

    blocks: tuple[tuple[str, int], ...]
    block_size: int
    remainder: int  # leftover cells per axis pass (0 when the size divides)

    def total_chars(self) -> int:
        return sum(len(s) * n for s, n in self.blocks)


@dataclass(frozen=True)
class BdmValue:
    value: float
    partition: BlockPartition
    table: str

    def __float__(self) -> float:
        return self.value


def flatten_binary(arr) -> str:
    """Row-major 0/1 string of a binary array of any dimension."""
    a = np.ascontiguousarray(np.asarray(arr, dtype=np.int8))
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError("array is not binary")
    return a.tobytes().translate(_BYTES_TO_01).decode()


def flatten_ternary(arr) -> str:
    """Row-major string of a {-1,0,1} array, two bits per cell."""
    a = np.asarray(arr, dtype=np.int8)
    if a.size and not np.isin(a, (-1, 0, 1)).all():
        raise ValueError("array is not over {-1, 0, 1}")
    return flatten_binary(_ternary_bits(a.reshape(-1)))


def _ternary_bits(a: np.ndarray) -> np.ndarray:
    """Expand the last axis: every ternary cell becomes two binary cells."""
    shape = a.shape[:-1] + (2 * a.shape[-1],)
    out = np.empty(shape, dtype=np.int8)
    out[..., 0::2] = a == -1
    out[..., 1::2] = a == 1
    return out


def partition_1d(s: str, b: int) -> BlockPartition:
    """Consecutive length-b blocks left to right; the tail stays shorter."""
    if not s:
        raise ValueError("cannot partition an empty string")
    if b < 1:
        raise ValueError("block length must be >= 1")
    counts: dict[str, int] = {}
    for i in range(0, len(s), b):
        block = s[i : i + b]
        counts[block] = counts.get(block, 0) + 1
    return BlockPartition(
        blocks=tuple(counts.items()),
        block_size=b,
        remainder=len(s) % b,
    )


def _score(counts: dict[str, int], table: CtmTable) -> float:
    return sum(table.lookup(block) + math.log2(n) for block, n in counts.items())


def bdm_1d(s: str, table: CtmTable, b: int = DEFAULT_BLOCK_LEN_1D) -> BdmValue:
    """BDM of a binary string decomposed into length-b blocks."""
    partition = partition_1d(s, b)
    counts = dict(partition.blocks)
    return BdmValue(value=_score(counts, table), partition=partition, table=repr(table))


def bdm_2d(a, table: CtmTable, d: int = DEFAULT_BLOCK_SIDE_2D, ternary: bool | None = None) -> BdmValue:
    """BDM of a 2D array tiled into d x d blocks (smaller ones at the edges).

    ``ternary=None`` picks the encoding from the data: any -1 cell switches
    to the two-bit expansion.
    """
    arr = np.asarray(a, dtype=np.int8)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D array, got shape {arr.shape}")
    if d < 1:
        raise ValueError("block side must be >= 1")
    if arr.size == 0:
        raise ValueError("cannot decompose an empty array")
    if ternary is None:
        ternary = bool((arr == -1).any())
    if ternary:
        if not np.isin(arr, (-1, 0, 1)).all():
            raise ValueError("array is not over {-1, 0, 1}")
        grid = _ternary_bits(arr)
        cell = 2  # binary columns per original cell
    else:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("array is not binary")
        grid = arr
        cell = 1

    height, width = arr.shape
    counts: dict[bytes, int] = {}
    for r in range(0, height, d):
        for c in range(0, width, d):
            tile = np.ascontiguousarray(grid[r : r + d, cell * c : cell * (c + d)])
            key = tile.tobytes()
            counts[key] = counts.get(key, 0) + 1
    str_counts: dict[str, int] = {}
    for key, n in counts.items():
        block = key.translate(_BYTES_TO_01).decode()
        str_counts[block] = str_counts.get(block, 0) + n
    partition = BlockPartition(
        blocks=tuple(str_counts.items()),
        block_size=d,
        remainder=(height % d) * width + (width % d) * (height - height % d),
    )
    return BdmValue(value=_score(str_counts, table), partition=partition, table=repr(table))
