"""Empirical output-frequency tables from exhaustive small Turing machines.

The machine class is the busy-beaver-style (n states, 2 symbols) formalism:
states are numbered 1..n, the head starts on cell 0 of an unbounded all-0
tape in state 1, and each of the 2n transition-table entries (state, read
symbol) holds one of 4n+2 choices:

* 4n non-halting choices: write 0/1, move L/R, go to one of the n states;
* 2 halting choices: write 0/1 and stop (no move).

That gives exactly (4n+2)^(2n) machines.  A machine is a single integer
``machine_index``: entry (q, a) is digit number 2*(q-1)+a of the index in
base 4n+2 (least-significant digit first).  Within a digit d, d < 4n
encodes (write d&1, move L if d%4 < 2 else R, next state d//4 + 1) and
d >= 4n encodes (halt, write d-4n).

A machine's output is the tape segment between the leftmost and rightmost
cells the head ever visited, read left to right at the moment it halts.
Output frequencies are tallied under both blank-symbol conventions: running
a machine on an all-1 tape is, after relabeling the symbols, identical to
complementing the all-0 run of its read/write-conjugate machine, and the
conjugation is a bijection of the class onto itself.  Summing over the full
class, counting each halting machine's output together with that output's
bitwise complement is therefore exactly the two-blank tally.  It makes
count(s) = count(complement(s)) an identity of the table and doubles the
halting count H relative to the number of halting machines.

The table assigns each output string s the value -log2(count(s) / H),
a frequency-of-production complexity estimate in bits.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, NamedTuple

import numpy as np

from .rng import Stream

DEFAULT_CUTOFF = 107  # sound for n <= 4: no (4,2) machine halts later
ENV_TABLE_DIR = "CABDM_TABLE_DIR"

_COMPLEMENT = str.maketrans("01", "10")
_BYTES_TO_01 = bytes.maketrans(b"\x00\x01", b"01")


class CoverageError(LookupError):
    """A block length the table has no entries for was looked up."""


class CorruptTableError(ValueError):
    """A table file failed validation while loading."""


class Transition(NamedTuple):
    write: int
    move: str | None       # "L"/"R", or None when the entry halts
    next_state: int | None  # None when the entry halts

    @property
    def halts(self) -> bool:
        return self.move is None


@dataclass(frozen=True)
class TuringMachine:
    states: int
    symbols: int
    machine_index: int
    transitions: dict[tuple[int, int], Transition]


@dataclass(frozen=True)
class RunOutcome:
    halted: bool
    steps_used: int
    output: str | None


def class_size(n: int, k: int = 2) -> int:
    _check_class(n, k)
    return (4 * n + 2) ** (2 * n)


def _check_class(n: int, k: int) -> None:
    if k != 2:
        raise ValueError(f"only k=2 machine classes are supported, got k={k}")
    if n < 1:
        raise ValueError(f"state count must be >= 1, got {n}")


def _digit_to_transition(digit: int, n: int) -> Transition:
    if digit >= 4 * n:
        return Transition(write=digit - 4 * n, move=None, next_state=None)
    return Transition(
        write=digit & 1,
        move="L" if digit % 4 < 2 else "R",
        next_state=digit // 4 + 1,
    )


def _transition_to_digit(t: Transition, n: int) -> int:
    if t.halts:
        return 4 * n + t.write
    return (t.next_state - 1) * 4 + (0 if t.move == "L" else 2) + t.write


def decode_machine(index: int, n: int, k: int = 2) -> TuringMachine:
    """Inverse of ``machine_index``: digits become transition entries."""
    _check_class(n, k)
    if not 0 <= index < class_size(n, k):
        raise ValueError(f"machine index {index} outside class of size {class_size(n, k)}")
    base = 4 * n + 2
    transitions = {}
    x = index
    for q in range(1, n + 1):
        for a in range(k):
            transitions[(q, a)] = _digit_to_transition(x % base, n)
            x //= base
    return TuringMachine(states=n, symbols=k, machine_index=index, transitions=transitions)


def encode_machine(machine: TuringMachine) -> int:
    base = 4 * machine.states + 2
    index = 0
    for q in range(machine.states, 0, -1):
        for a in range(machine.symbols - 1, -1, -1):
            index = index * base + _transition_to_digit(machine.transitions[(q, a)], machine.states)
    return index


def enumerate_machines(n: int, k: int = 2) -> Iterator[TuringMachine]:
    """Yield every machine of the class once, in ascending index order."""
    for index in range(class_size(n, k)):
        yield decode_machine(index, n, k)


def run_machine(machine: TuringMachine, cutoff: int) -> RunOutcome:
    """Simulate one machine on a blank tape for at most ``cutoff`` steps.

    This is the plain reference simulator; ``build_table`` uses a
    vectorized equivalent and is cross-checked against this one.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    tape: dict[int, int] = {}
    head = 0
    state = 1
    lo = hi = 0
    for step in range(1, cutoff + 1):
        t = machine.transitions[(state, tape.get(head, 0))]
        tape[head] = t.write
        if t.halts:
            output = "".join(str(tape.get(i, 0)) for i in range(lo, hi + 1))
            return RunOutcome(halted=True, steps_used=step, output=output)
        head += -1 if t.move == "L" else 1
        lo = min(lo, head)
        hi = max(hi, head)
        state = t.next_state
    return RunOutcome(halted=False, steps_used=cutoff, output=None)


def _simulate_array(n: int, cutoff: int, indices: np.ndarray) -> tuple[Counter, int, int]:
    """Run the machines with the given indices in vectorized lockstep.

    Returns (output counts before complement-symmetrization, number of
    halting machines, maximum steps among halters).
    """
    base = 4 * n + 2
    count = len(indices)
    digits = np.empty((count, 2 * n), dtype=np.int8)
    x = indices.astype(np.int64, copy=True)
    for e in range(2 * n):
        digits[:, e] = x % base
        x //= base

    radius = cutoff
    tape = np.zeros((count, 2 * radius + 1), dtype=np.int8)
    head = np.full(count, radius, dtype=np.int32)
    state = np.ones(count, dtype=np.int8)
    mn = np.full(count, radius, dtype=np.int32)
    mx = np.full(count, radius, dtype=np.int32)
    halted = np.zeros(count, dtype=bool)
    max_steps = 0
    alive = np.arange(count, dtype=np.int64)

    for step in range(1, cutoff + 1):
        if alive.size == 0:
            break
        pos = head[alive]
        entry = (state[alive] - 1) * 2 + tape[alive, pos]
        dig = digits[alive, entry]
        is_halt = dig >= 4 * n
        tape[alive, pos] = np.where(is_halt, dig - 4 * n, dig & 1).astype(np.int8)
        if is_halt.any():
            halted[alive[is_halt]] = True
            max_steps = step
        keep = ~is_halt
        alive = alive[keep]
        if alive.size:
            dig = dig[keep]
            moved = head[alive] + np.where(dig % 4 < 2, -1, 1).astype(np.int32)
            head[alive] = moved
            mn[alive] = np.minimum(mn[alive], moved)
            mx[alive] = np.maximum(mx[alive], moved)
            state[alive] = (dig // 4 + 1).astype(np.int8)

    counts: Counter = Counter()
    for i in np.flatnonzero(halted):
        counts[tape[i, mn[i] : mx[i] + 1].tobytes().translate(_BYTES_TO_01).decode()] += 1
    return counts, int(halted.sum()), max_steps


def _simulate_ranges(args) -> tuple[Counter, int, int]:
    n, cutoff, lo, hi = args
    return _simulate_array(n, cutoff, np.arange(lo, hi, dtype=np.int64))


def max_halting_steps(n: int, k: int = 2, cutoff: int = DEFAULT_CUTOFF) -> int:
    """Largest step count of any halting machine in the class (<= cutoff)."""
    _check_class(n, k)
    best = 0
    for lo in range(0, class_size(n, k), 1 << 18):
        hi = min(lo + (1 << 18), class_size(n, k))
        _, _, steps = _simulate_array(n, cutoff, np.arange(lo, hi, dtype=np.int64))
        best = max(best, steps)
    return best


class CtmTable:
    """Output-frequency table mapping strings to (count, ctm bits)."""

    def __init__(self, n, k, cutoff, total, halting, entries, sampled=False):
        self.n = n
        self.k = k
        self.cutoff = cutoff
        self.total = total
        self.halting = halting
        self.sampled = sampled
        self.entries: dict[str, tuple[int, float]] = dict(entries)
        self._max_by_length: dict[int, float] = {}
        for s, (_, value) in self.entries.items():
            length = len(s)
            if value > self._max_by_length.get(length, -math.inf):
                self._max_by_length[length] = value

    def __eq__(self, other) -> bool:
        if not isinstance(other, CtmTable):
            return NotImplemented
        return (
            (self.n, self.k, self.cutoff, self.total, self.halting, self.sampled)
            == (other.n, other.k, other.cutoff, other.total, other.halting, other.sampled)
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return (
            f"CtmTable(n={self.n}, k={self.k}, cutoff={self.cutoff}, total={self.total}, "
            f"halting={self.halting}, entries={len(self.entries)}, sampled={self.sampled})"
        )

    def lookup(self, block: str) -> float:
        """CTM value of a block, or max-at-its-length + 1 bit if unseen."""
        if not block:
            raise ValueError("cannot look up an empty block")
        if any(c not in "01" for c in block):
            raise ValueError(f"block {block!r} is not over the table's 0/1 alphabet")
        hit = self.entries.get(block)
        if hit is not None:
            return hit[1]
        fallback = self._max_by_length.get(len(block))
        if fallback is None:
            raise CoverageError(
                f"table for ({self.n},{self.k}) has no outputs of length {len(block)}"
            )
        return fallback + 1.0

    def covered_counts(self) -> dict[int, int]:
        """How many distinct strings the table holds, per length."""
        out: dict[int, int] = {}
        for s in self.entries:
            out[len(s)] = out.get(len(s), 0) + 1
        return dict(sorted(out.items()))

    def fully_covered_lengths(self) -> list[int]:
        """Lengths L for which all 2^L strings are present."""
        return [L for L, c in self.covered_counts().items() if c == 2**L]

    def save(self, path) -> None:
        save_table(self, path)


def lookup(table: CtmTable, block: str) -> float:
    return table.lookup(block)


def _stratified_sample(total: int, size: int, seed: int) -> np.ndarray:
    """One uniform index per stratum of an even partition of the class."""
    stream = Stream("ctm-sample", seed)
    bounds = [i * total // size for i in range(size + 1)]
    picks = [lo + stream.next_below(hi - lo) for lo, hi in zip(bounds, bounds[1:])]
    return np.asarray(picks, dtype=np.int64)


def build_table(
    n: int,
    k: int = 2,
    cutoff: int = DEFAULT_CUTOFF,
    workers: int = 1,
    sample: int | None = None,
    sample_seed: int = 0,
    allow_long_run: bool = False,
    chunk_size: int = 1 << 18,
) -> CtmTable:
    """Enumerate (or sample) the machine class and tally halting outputs.

    Enumeration is cut into fixed contiguous index ranges; ranges may be
    simulated by any number of worker processes, and because merging counts
    is a commutative integer sum the resulting table does not depend on
    ``workers`` or scheduling.
    """
    _check_class(n, k)
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    total_class = class_size(n, k)
    if sample is None:
        if n > 4:
            raise ValueError(
                f"full enumeration of {total_class} machines at n={n} is not supported; "
                "pass sample= to build a sampled table"
            )
        if n == 4 and not allow_long_run:
            raise ValueError(
                "full (4,2) enumeration takes hours; pass allow_long_run=True "
                "or sample= for a sampled table"
            )
        jobs = [(n, cutoff, lo, min(lo + chunk_size, total_class)) for lo in range(0, total_class, chunk_size)]
        total = total_class
    else:
        if not 1 <= sample <= total_class:
            raise ValueError(f"sample size must be in [1, {total_class}]")
        indices = _stratified_sample(total_class, sample, sample_seed)
        total = sample

    raw: Counter = Counter()
    halting_machines = 0
    if sample is not None:
        # Sampled indices are not contiguous; run them through the same
        # vectorized core one chunk at a time.
        for lo in range(0, len(indices), chunk_size):
            part = _simulate_array(n, cutoff, indices[lo : lo + chunk_size])
            raw += part[0]
            halting_machines += part[1]
    elif workers <= 1:
        for job in jobs:
            part = _simulate_ranges(job)
            raw += part[0]
            halting_machines += part[1]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_simulate_ranges, jobs):
                raw += part[0]
                halting_machines += part[1]

    counts: Counter = Counter()
    for s, c in raw.items():
        counts[s] += c
        counts[s.translate(_COMPLEMENT)] += c
    halting = 2 * halting_machines
    if halting == 0:
        raise RuntimeError(f"no machine of the ({n},{k}) class halted within {cutoff} steps")
    entries = {s: (c, -math.log2(c / halting)) for s, c in counts.items()}
    return CtmTable(
        n=n,
        k=k,
        cutoff=cutoff,
        total=total,
        halting=halting,
        entries=entries,
        sampled=sample is not None,
    )


def _sort_key(item):
    s = item[0]
    return (len(s), s)


def save_table(table: CtmTable, path) -> None:
    """Write the documented text format (sorted, 12-digit ctm values)."""
    lines = [
        f"#n={table.n}",
        f"#k={table.k}",
        f"#cutoff={table.cutoff}",
        f"#total={table.total}",
        f"#halting={table.halting}",
        f"#sampled={'true' if table.sampled else 'false'}",
    ]
    for s, (count, value) in sorted(table.entries.items(), key=_sort_key):
        lines.append(f"{s}\t{count}\t{value:.12f}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_table(path) -> CtmTable:
    """Read and fully validate a table file; raises CorruptTableError."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    header: dict[str, str] = {}
    body_start = 0
    for line in lines:
        if not line.startswith("#"):
            break
        key, _, value = line[1:].partition("=")
        header[key] = value
        body_start += 1
    expected = ("n", "k", "cutoff", "total", "halting")
    if any(key not in header for key in expected) or "sampled" not in header:
        raise CorruptTableError(f"{path}: missing or malformed header lines")
    try:
        n, k, cutoff, total, halting = (int(header[key]) for key in expected)
    except ValueError as exc:
        raise CorruptTableError(f"{path}: non-integer header field") from exc
    if header["sampled"] not in ("true", "false"):
        raise CorruptTableError(f"{path}: bad sampled flag {header['sampled']!r}")
    sampled = header["sampled"] == "true"

    entries: dict[str, tuple[int, float]] = {}
    for line in lines[body_start:]:
        parts = line.split("\t")
        if len(parts) != 3:
            raise CorruptTableError(f"{path}: malformed entry line {line!r}")
        s, count_text, value_text = parts
        if not s or any(c not in "01" for c in s) or s in entries:
            raise CorruptTableError(f"{path}: bad or duplicate output string {s!r}")
        try:
            count = int(count_text)
        except ValueError as exc:
            raise CorruptTableError(f"{path}: non-integer count in {line!r}") from exc
        if count < 1:
            raise CorruptTableError(f"{path}: non-positive count in {line!r}")
        value = -math.log2(count / halting)
        if f"{value:.12f}" != value_text:
            raise CorruptTableError(
                f"{path}: ctm value {value_text} does not match count {count} (expected {value:.12f})"
            )
        entries[s] = (count, value)
    if not entries:
        raise CorruptTableError(f"{path}: table has no entries")
    if sum(c for c, _ in entries.values()) != halting:
        raise CorruptTableError(f"{path}: halting count {halting} != sum of entry counts")
    return CtmTable(n=n, k=k, cutoff=cutoff, total=total, halting=halting, entries=entries, sampled=sampled)


def default_table(n: int = 3, k: int = 2):
    """Locate the default table: $CABDM_TABLE_DIR first, then package data."""
    name = f"ctm_{n}_{k}.txt"
    env_dir = os.environ.get(ENV_TABLE_DIR)
    if env_dir:
        candidate = os.path.join(env_dir, name)
        if os.path.exists(candidate):
            return load_table(candidate)
    ref = resources.files("cabdm.data").joinpath(name)
    if not ref.is_file():
        raise FileNotFoundError(f"no packaged CTM table {name}; build one with build_table/ctm-build")
    with resources.as_file(ref) as real_path:
        return load_table(real_path)
