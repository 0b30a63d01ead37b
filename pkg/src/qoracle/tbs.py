"""Transformation-based synthesis of minimal-qubit reversible cascades.

The synthesizer walks the truth table in ascending input order and, per row,
chooses Toffoli gates that fix the row's output pattern without disturbing
earlier rows.  Turning the residual map into the identity and reversing the
collected cascade yields a circuit realizing the original permutation.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .circuit import POSITIVE, Circuit, mcx
from .embed import ReversibleSpec
from .errors import GateLimitExceeded, NotBijective, SynthesisTimeout

UNIDIRECTIONAL = "unidirectional"
BIDIRECTIONAL = "bidirectional"

#: Past this table size, gate application switches to vectorized arrays.
_NUMPY_THRESHOLD = 1024


@dataclass
class TbsOptions:
    direction: str = UNIDIRECTIONAL
    gate_limit: int = 50_000
    timeout_us: int | None = None
    validate: bool = False

    def __post_init__(self) -> None:
        if self.direction not in (UNIDIRECTIONAL, BIDIRECTIONAL):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.gate_limit <= 0:
            raise ValueError("gate_limit must be positive")


def _bits_desc(mask: int, width: int) -> list[int]:
    return [1 << k for k in range(width - 1, -1, -1) if mask >> k & 1]


def _plan(value: int, row: int, width: int) -> list[tuple[int, int]]:
    """Gates (control mask, target bit) turning ``value`` into ``row``.

    First sets the bits present in the row but missing from the value,
    controlling on the evolving value; then clears the extra bits,
    controlling on the row.  Bits are handled in descending significance.
    """
    gates = []
    current = value
    for bit in _bits_desc(row & ~current, width):
        gates.append((current, bit))
        current |= bit
    for bit in _bits_desc(current & ~row, width):
        gates.append((row, bit))
        current ^= bit
    return gates


class _TableState:
    """Permutation table (and optionally its inverse) under gate updates."""

    def __init__(self, perm: np.ndarray, track_inverse: bool):
        self.size = perm.size
        self.vectorized = self.size >= _NUMPY_THRESHOLD
        if self.vectorized:
            self.perm = perm.astype(np.int64)
            self.idx = np.arange(self.size)
            self.inv = None
            if track_inverse:
                self.inv = np.empty(self.size, dtype=np.int64)
                self.inv[self.perm] = self.idx
        else:
            self.perm = perm.tolist()
            self.inv = None
            if track_inverse:
                self.inv = [0] * self.size
                for i, y in enumerate(self.perm):
                    self.inv[y] = i

    def apply_output_gate(self, cmask: int, tbit: int) -> None:
        if self.vectorized:
            hit = (self.perm & cmask) == cmask
            self.perm[hit] ^= tbit
            if self.inv is not None:
                sel = self.idx[((self.idx & cmask) == cmask) & ((self.idx & tbit) == 0)]
                tmp = self.inv[sel].copy()
                self.inv[sel] = self.inv[sel | tbit]
                self.inv[sel | tbit] = tmp
        else:
            perm = self.perm
            for i in range(self.size):
                if perm[i] & cmask == cmask:
                    perm[i] ^= tbit
            if self.inv is not None:
                inv = self.inv
                for y in range(self.size):
                    if y & cmask == cmask and not y & tbit:
                        inv[y], inv[y | tbit] = inv[y | tbit], inv[y]

    def apply_input_gate(self, cmask: int, tbit: int) -> None:
        if self.vectorized:
            sel = self.idx[((self.idx & cmask) == cmask) & ((self.idx & tbit) == 0)]
            tmp = self.perm[sel].copy()
            self.perm[sel] = self.perm[sel | tbit]
            self.perm[sel | tbit] = tmp
            hit = (self.inv & cmask) == cmask
            self.inv[hit] ^= tbit
        else:
            perm = self.perm
            for x in range(self.size):
                if x & cmask == cmask and not x & tbit:
                    perm[x], perm[x | tbit] = perm[x | tbit], perm[x]
            inv = self.inv
            for y in range(self.size):
                if inv[y] & cmask == cmask:
                    inv[y] ^= tbit

    def value(self, row: int) -> int:
        return int(self.perm[row])

    def preimage(self, row: int) -> int:
        return int(self.inv[row])

    def prefix_fixed(self, row: int) -> bool:
        if self.vectorized:
            return bool((self.perm[: row + 1] == self.idx[: row + 1]).all())
        return all(self.perm[k] == k for k in range(row + 1))


def _to_gate(cmask: int, tbit: int, width: int):
    target = width - 1 - (tbit.bit_length() - 1)
    controls = [
        (col, POSITIVE)
        for col in range(width)
        if cmask >> (width - 1 - col) & 1
    ]
    return mcx(target, controls)


def tbs_synthesize(spec: ReversibleSpec, opts: TbsOptions | None = None) -> Circuit:
    """Synthesize an MCT cascade realizing the given permutation table."""
    opts = opts or TbsOptions()
    if not spec.is_bijection():
        raise NotBijective("TBS needs a total bijection; complete the table first")
    width = spec.width
    size = 1 << width
    deadline = None
    if opts.timeout_us is not None:
        deadline = time.monotonic() + opts.timeout_us / 1e6
    bidirectional = opts.direction == BIDIRECTIONAL
    state = _TableState(np.asarray(spec.perm), track_inverse=bidirectional)

    out_gates: list[tuple[int, int]] = []
    in_gates: list[tuple[int, int]] = []
    for row in range(size - 1):
        if deadline is not None and time.monotonic() > deadline:
            raise SynthesisTimeout(f"gave up at row {row} of {size}")
        value = state.value(row)
        if value == row:
            continue
        out_plan = _plan(value, row, width)
        if bidirectional:
            in_plan = _plan(state.preimage(row), row, width)
            out_cost = (len(out_plan), sum(bin(c).count("1") for c, _ in out_plan))
            in_cost = (len(in_plan), sum(bin(c).count("1") for c, _ in in_plan))
            take_input = in_cost < out_cost
        else:
            take_input = False
        plan = in_plan if take_input else out_plan
        if len(out_gates) + len(in_gates) + len(plan) > opts.gate_limit:
            raise GateLimitExceeded(
                f"over {opts.gate_limit} gates at row {row} of {size}"
            )
        for cmask, tbit in plan:
            if take_input:
                state.apply_input_gate(cmask, tbit)
                in_gates.append((cmask, tbit))
            else:
                state.apply_output_gate(cmask, tbit)
                out_gates.append((cmask, tbit))
            # Chosen controls can never all be present in an earlier row's
            # pattern, so the processed prefix must stay fixed gate by gate.
            if opts.validate and row and not state.prefix_fixed(row - 1):
                raise AssertionError(f"a row before {row} was disturbed")
        if opts.validate and not state.prefix_fixed(row):
            raise AssertionError(f"row {row} not fixed after its gates")

    gates = [_to_gate(c, t, width) for c, t in in_gates]
    gates.extend(_to_gate(c, t, width) for c, t in reversed(out_gates))
    method = "tbs-bidirectional" if bidirectional else "tbs"
    return Circuit(
        width=width,
        gates=gates,
        roles_in=spec.roles_in,
        roles_out=spec.roles_out,
        method=method,
    )
