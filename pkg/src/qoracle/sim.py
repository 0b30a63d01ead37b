"""Verification engines: classical cascade simulation and a statevector backend."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import CLASSICAL_KINDS, KIND_H, KIND_MCX, KIND_MCZ, KIND_X, KIND_Z, NEGATIVE, Circuit
from .embed import ROLE_ANCILLA, ROLE_INPUT, ROLE_OUTPUT
from .errors import NonClassicalGate, NotBijective, RoleMismatch, TooWide
from .pla import SpecTable

#: Hard cap for explicit 2^N enumeration (permutations and statevectors).
SIM_LIMIT = 20

MODE_MINIMAL = "minimal"
MODE_PRESERVE = "preserve"


@dataclass
class Permutation:
    """A bijection on 2^width bit patterns, stored as an explicit array."""

    width: int
    map: np.ndarray

    def __post_init__(self) -> None:
        self.map = np.asarray(self.map, dtype=np.int64)
        if not np.array_equal(np.sort(self.map), np.arange(1 << self.width)):
            raise NotBijective("map is not a permutation")


@dataclass
class VerificationReport:
    total_minterms: int
    checked: int
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        state = "PASS" if self.passed else f"FAIL ({len(self.mismatches)} mismatches)"
        return f"{self.checked}/{self.total_minterms} minterms checked: {state}"


def _compile_classical(circuit: Circuit) -> list[tuple[int, int, int]]:
    """Translate gates to (positive mask, negative mask, target mask) words.

    Value-space bit width-1-q corresponds to qubit q, matching the MSB-first
    integer convention.
    """
    width = circuit.width
    compiled = []
    for gate in circuit.gates:
        if gate.kind not in CLASSICAL_KINDS:
            raise NonClassicalGate(f"{gate.kind} gate has no classical action")
        pos = neg = 0
        for q, pol in gate.controls:
            bit = 1 << (width - 1 - q)
            if pol == NEGATIVE:
                neg |= bit
            else:
                pos |= bit
        compiled.append((pos, neg, 1 << (width - 1 - gate.target)))
    return compiled


def apply_classical(circuit: Circuit, pattern: int) -> int:
    """Run one basis state through an X/MCX cascade."""
    for pos, neg, target in _compile_classical(circuit):
        if pattern & pos == pos and pattern & neg == 0:
            pattern ^= target
    return pattern


def apply_classical_batch(circuit: Circuit, patterns: np.ndarray) -> np.ndarray:
    """Vectorized apply_classical over an array of basis states."""
    out = np.asarray(patterns, dtype=np.int64).copy()
    for pos, neg, target in _compile_classical(circuit):
        hit = (out & pos == pos) & (out & neg == 0)
        out[hit] ^= target
    return out


def induced_permutation(circuit: Circuit) -> Permutation:
    """Evaluate the cascade on every basis state; asserts bijectivity."""
    if circuit.width > SIM_LIMIT:
        raise TooWide(f"width {circuit.width} exceeds the simulation limit {SIM_LIMIT}")
    table = apply_classical_batch(circuit, np.arange(1 << circuit.width))
    return Permutation(circuit.width, table)


def _role_positions(circuit: Circuit, spec: SpecTable) -> tuple[list[int], list[int], list[int]]:
    ins = [q for q, r in enumerate(circuit.roles_in) if r == ROLE_INPUT]
    ancs = [q for q, r in enumerate(circuit.roles_in) if r == ROLE_ANCILLA]
    outs = [q for q, r in enumerate(circuit.roles_out) if r == ROLE_OUTPUT]
    if len(ins) != spec.n:
        raise RoleMismatch(f"{len(ins)} input qubits for an n={spec.n} table")
    if len(outs) != spec.m:
        raise RoleMismatch(f"{len(outs)} output qubits for an m={spec.m} table")
    if len(ins) + len(ancs) != circuit.width:
        raise RoleMismatch("input-side roles must be input or ancilla")
    return ins, ancs, outs


def verify_oracle(circuit: Circuit, spec: SpecTable, mode: str = MODE_MINIMAL) -> VerificationReport:
    """Check a circuit against every specified minterm of a table.

    Function inputs are loaded onto the input-role qubits, ancillas start at
    zero, and the output-role qubits must reproduce each specified output bit
    (don't-cares are skipped).  ``preserve`` mode additionally requires the
    input qubits to still read the applied minterm afterwards.
    """
    if mode not in (MODE_MINIMAL, MODE_PRESERVE):
        raise ValueError(f"unknown mode {mode!r}")
    ins, _, outs = _role_positions(circuit, spec)
    width = circuit.width
    minterms = sorted(spec.entries)
    report = VerificationReport(total_minterms=len(minterms), checked=0)
    if not minterms:
        return report

    in_bits = [1 << (width - 1 - q) for q in ins]
    out_bits = [1 << (width - 1 - q) for q in outs]
    words = np.zeros(len(minterms), dtype=np.int64)
    for j, bit in enumerate(in_bits):
        col = np.array([(x >> (spec.n - 1 - j)) & 1 for x in minterms], dtype=np.int64)
        words |= col * bit
    results = apply_classical_batch(circuit, words)

    for idx, minterm in enumerate(minterms):
        got_word = int(results[idx])
        got = "".join("1" if got_word & bit else "0" for bit in out_bits)
        expected = spec.output_bits(minterm)
        ok = all(e in ("-", g) for e, g in zip(expected, got))
        if mode == MODE_PRESERVE:
            got_x = "".join("1" if got_word & bit else "0" for bit in in_bits)
            x_bits = format(minterm, f"0{spec.n}b")
            expected = f"{expected}|{x_bits}"
            got = f"{got}|{got_x}"
            ok = ok and got_x == x_bits
        report.checked += 1
        if not ok:
            report.mismatches.append((format(minterm, f"0{spec.n}b"), expected, got))
    return report


@dataclass
class StateVector:
    width: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.width,):
            raise ValueError("amplitude vector must have 2^width entries")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm {norm} is not 1")


def zero_state(width: int) -> StateVector:
    amps = np.zeros(1 << width, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(width, amps)


def apply_statevector(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply X/H/Z/MCX/MCZ gates to a statevector (width capped at 20)."""
    width = circuit.width
    if width > SIM_LIMIT:
        raise TooWide(f"width {width} exceeds the simulation limit {SIM_LIMIT}")
    if width != state.width:
        raise ValueError("circuit and state widths differ")
    amps = state.amplitudes.copy()
    idx = np.arange(1 << width)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for gate in circuit.gates:
        tbit = 1 << (width - 1 - gate.target)
        pos = neg = 0
        for q, pol in gate.controls:
            bit = 1 << (width - 1 - q)
            if pol == NEGATIVE:
                neg |= bit
            else:
                pos |= bit
        if gate.kind in (KIND_X, KIND_MCX):
            src = np.where((idx & pos == pos) & (idx & neg == 0), idx ^ tbit, idx)
            amps = amps[src]
        elif gate.kind == KIND_H:
            v = amps.reshape([2] * width)
            lo = [slice(None)] * width
            hi = [slice(None)] * width
            lo[gate.target], hi[gate.target] = 0, 1
            a = v[tuple(lo)].copy()
            b = v[tuple(hi)].copy()
            v[tuple(lo)] = (a + b) * inv_sqrt2
            v[tuple(hi)] = (a - b) * inv_sqrt2
            amps = v.reshape(-1)
        elif gate.kind in (KIND_Z, KIND_MCZ):
            sel = (idx & pos == pos) & (idx & neg == 0) & (idx & tbit != 0)
            amps[sel] *= -1.0
        else:
            raise NonClassicalGate(f"statevector backend cannot apply {gate.kind}")
    return StateVector(width, amps)


def measure_distribution(state: StateVector) -> dict[str, float]:
    """Probabilities of each basis pattern (MSB-first), zeros omitted."""
    probs = np.abs(state.amplitudes) ** 2
    out = {}
    for i in np.flatnonzero(probs > 1e-12):
        out[format(int(i), f"0{state.width}b")] = float(probs[i])
    return out


def sample(state: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Seeded multinomial sampling; identical seeds give identical histograms."""
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        format(int(i), f"0{state.width}b"): int(counts[i])
        for i in np.flatnonzero(counts)
    }


def marginal_probabilities(state: StateVector, keep: int) -> np.ndarray:
    """Probabilities of the first ``keep`` qubits, traced over the rest."""
    probs = np.abs(state.amplitudes) ** 2
    probs = probs.reshape([2] * state.width)
    for _ in range(state.width - keep):
        probs = probs.sum(axis=-1)
    return probs.reshape(-1)
