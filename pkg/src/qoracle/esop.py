"""Exclusive-or sum-of-products conversion, minimization and circuit mapping.

Cubes are manipulated per output column as (care, value) integer masks where
bit n-1-col corresponds to input column col.  Two cubes are at distance d
when their literals differ in d positions; distance-0 pairs cancel under
XOR, distance-1 pairs merge into a single cube, and distance-2 pairs can be
rewritten into an equivalent pair that may unlock further merging.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .circuit import POSITIVE, NEGATIVE, Circuit, mcx
from .embed import ROLE_ANCILLA, ROLE_INPUT, ROLE_OUTPUT
from .errors import SynthesisTimeout
from .pla import Cube, PlaTable


@dataclass
class EsopCubeList:
    """Cubes read with XOR semantics per output column."""

    n: int
    m: int
    cubes: list[Cube] = field(default_factory=list)


def _masks(inputs: str) -> tuple[int, int]:
    n = len(inputs)
    care = value = 0
    for col, ch in enumerate(inputs):
        bit = 1 << (n - 1 - col)
        if ch != "-":
            care |= bit
            if ch == "1":
                value |= bit
    return care, value


def _literals(care: int, value: int, n: int) -> str:
    out = []
    for col in range(n):
        bit = 1 << (n - 1 - col)
        out.append("-" if not care & bit else "1" if value & bit else "0")
    return "".join(out)


def _bits_desc(mask: int, n: int):
    for k in range(n - 1, -1, -1):
        bit = 1 << k
        if mask & bit:
            yield bit


def _subtract(cube: tuple[int, int], other: tuple[int, int]) -> list[tuple[int, int]]:
    """Disjoint-sharp: pieces of ``cube`` not covered by ``other``."""
    c, v = cube
    oc, ov = other
    if (v ^ ov) & c & oc:
        return [cube]
    pieces = []
    acc_c, acc_v = c, v
    for bit in _bits_desc(oc & ~c, max(oc.bit_length(), c.bit_length())):
        pieces.append((acc_c | bit, acc_v | (0 if ov & bit else bit)))
        acc_c |= bit
        acc_v |= ov & bit
    return pieces


def _disjoint_column(cubes: list[tuple[int, int]], full: int) -> list[tuple[int, int]]:
    """Make an OR cube list pairwise disjoint (then OR equals XOR)."""
    result: list[tuple[int, int]] = []
    minterms: set[int] = set()
    dashed: list[tuple[int, int]] = []
    for cube in cubes:
        care, value = cube
        if care == full:
            # Fully specified rows only collide with identical rows or a
            # dashed cube that covers them.
            if value in minterms:
                continue
            if any(value & dc == dv for dc, dv in dashed):
                continue
            minterms.add(value)
            result.append(cube)
            continue
        pieces = [cube]
        for ex in result:
            nxt: list[tuple[int, int]] = []
            for piece in pieces:
                nxt.extend(_subtract(piece, ex))
            pieces = nxt
            if not pieces:
                break
        for piece in pieces:
            result.append(piece)
            if piece[0] == full:
                minterms.add(piece[1])
            else:
                dashed.append(piece)
    return result


def sop_to_esop(table: PlaTable) -> EsopCubeList:
    """Convert OR-semantics cubes to a valid ESOP by per-column disjointing.

    Output don't-care marks are treated as zeros: only '1' marks contribute.
    """
    full = (1 << table.n) - 1
    columns: list[list[tuple[int, int]]] = []
    for j in range(table.m):
        on = [_masks(c.inputs) for c in table.cubes if c.outputs[j] == "1"]
        columns.append(_disjoint_column(on, full))
    return _assemble(table.n, table.m, columns)


def _assemble(n: int, m: int, columns: list[list[tuple[int, int]]]) -> EsopCubeList:
    order: dict[tuple[int, int], int] = {}
    marks: dict[tuple[int, int], int] = {}
    for j, cubes in enumerate(columns):
        for cube in cubes:
            if cube not in order:
                order[cube] = len(order)
                marks[cube] = 0
            marks[cube] |= 1 << (m - 1 - j)
    out = []
    for cube, _ in sorted(order.items(), key=lambda kv: kv[1]):
        outs = "".join("1" if marks[cube] >> (m - 1 - j) & 1 else "0" for j in range(m))
        out.append(Cube(_literals(cube[0], cube[1], n), outs))
    return EsopCubeList(n=n, m=m, cubes=out)


def _merge_literal(bit: int, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """XOR of two cubes differing only at ``bit``, as a single cube."""
    ac, av = a
    a_lit = "-" if not ac & bit else "1" if av & bit else "0"
    bc = b[0]
    b_lit = "-" if not bc & bit else "1" if b[1] & bit else "0"
    pair = {a_lit, b_lit}
    if pair == {"0", "1"}:
        return (ac & ~bit, av & ~bit)
    if pair == {"1", "-"}:
        return (ac | bit, av & ~bit)
    # {"0", "-"}
    return (ac | bit, av | bit)


class _ColumnSet:
    """Insertion-cascading cube container for one output column.

    Inserting a cube cancels it against an identical live cube or merges it
    with a distance-1 partner, repeating until no interaction remains, so
    the set stays saturated under distance-0/1 reduction at all times.
    """

    def __init__(self, n: int):
        self.n = n
        self.live: dict[int, tuple[int, int]] = {}
        self.by_cube: dict[tuple[int, int], int] = {}
        self.by_key: dict[tuple[int, int, int], int] = {}
        self.next_id = 0
        self.dirty = True

    def _keys(self, cube: tuple[int, int]):
        care, value = cube
        for k in range(self.n):
            bit = 1 << k
            yield (bit, care & ~bit, value & ~bit)

    def remove(self, cube_id: int) -> None:
        cube = self.live.pop(cube_id)
        del self.by_cube[cube]
        for key in self._keys(cube):
            if self.by_key.get(key) == cube_id:
                del self.by_key[key]

    def insert(self, cube: tuple[int, int]) -> None:
        self.dirty = True
        twin = self.by_cube.get(cube)
        if twin is not None:
            self.remove(twin)
            return
        for key in self._keys(cube):
            partner_id = self.by_key.get(key)
            if partner_id is not None:
                partner = self.live[partner_id]
                self.remove(partner_id)
                self.insert(_merge_literal(key[0], cube, partner))
                return
        cube_id = self.next_id
        self.next_id += 1
        self.live[cube_id] = cube
        self.by_cube[cube] = cube_id
        for key in self._keys(cube):
            self.by_key[key] = cube_id

    def ordered(self) -> list[tuple[int, tuple[int, int]]]:
        return sorted(self.live.items())

    def has_partner(self, cube: tuple[int, int], exclude: set[int]) -> bool:
        twin = self.by_cube.get(cube)
        if twin is not None and twin not in exclude:
            return True
        for key in self._keys(cube):
            partner = self.by_key.get(key)
            if partner is not None and partner not in exclude:
                return True
        return False


def _diff_bits(a: tuple[int, int], b: tuple[int, int], n: int) -> list[int]:
    care_diff = a[0] ^ b[0]
    value_diff = (a[1] ^ b[1]) & a[0] & b[0]
    mask = care_diff | value_diff
    return [1 << k for k in range(n) if mask >> k & 1]


def _weld(bit: int, keep: tuple[int, int], other: tuple[int, int]) -> tuple[int, int]:
    merged = _merge_literal(bit, keep, other)
    # Replace keep's literal at bit with the merged literal.
    care = (keep[0] & ~bit) | (merged[0] & bit)
    value = (keep[1] & ~bit) | (merged[1] & bit)
    return (care, value)


def _distance2_sweep(column: _ColumnSet) -> bool:
    """One pass of conditional distance-2 rewrites over a saturated column.

    A pair is rewritten only when one of the rewritten cubes immediately
    cancels or merges with a third cube, so every commit shrinks the set.
    """
    n = column.n
    buckets: dict[tuple[int, int, int, int], list[int]] = {}
    for cube_id, (care, value) in column.ordered():
        for i in range(n):
            for j in range(i + 1, n):
                erase = (1 << i) | (1 << j)
                key = (1 << i, 1 << j, care & ~erase, value & ~erase)
                buckets.setdefault(key, []).append(cube_id)
    pairs = sorted(
        {(a, b) for ids in buckets.values() if len(ids) > 1
         for k, a in enumerate(ids) for b in ids[k + 1:]}
    )
    changed = False
    for id_a, id_b in pairs:
        if id_a not in column.live or id_b not in column.live:
            continue
        a = column.live[id_a]
        b = column.live[id_b]
        bits = _diff_bits(a, b, n)
        if len(bits) != 2:
            continue
        for bit_a, bit_b in ((bits[0], bits[1]), (bits[1], bits[0])):
            new_a = _weld(bit_a, a, b)
            new_b = _weld(bit_b, b, a)
            exclude = {id_a, id_b}
            if column.has_partner(new_a, exclude) or column.has_partner(new_b, exclude):
                column.remove(id_a)
                column.remove(id_b)
                column.insert(new_a)
                column.insert(new_b)
                changed = True
                break
    return changed


def minimize_esop(
    cubes: EsopCubeList,
    passes: int = 10,
    deadline: float | None = None,
) -> EsopCubeList:
    """Shrink an ESOP cube list without changing its XOR semantics.

    Each pass saturates distance-0 cancellation and distance-1 merging per
    output column, then tries conditional distance-2 rewrites; it stops
    after a pass with no reduction or after ``passes`` passes.  The result
    never has more cubes than the input.
    """
    columns: list[_ColumnSet] = []
    for j in range(cubes.m):
        column = _ColumnSet(cubes.n)
        for cube in cubes.cubes:
            if cube.outputs[j] == "1":
                column.insert(_masks(cube.inputs))
        columns.append(column)
    for _ in range(max(passes, 1)):
        if deadline is not None and time.monotonic() > deadline:
            raise SynthesisTimeout("ESOP minimization ran out of time")
        changed = False
        for col in columns:
            if not col.dirty:
                continue
            col.dirty = False
            if _distance2_sweep(col):
                changed = True
        if not changed:
            break
    result = _assemble(
        cubes.n, cubes.m, [[c for _, c in col.ordered()] for col in columns]
    )
    if len(result.cubes) > len(cubes.cubes):
        return cubes
    return result


def esop_to_circuit(cubes: EsopCubeList, source: str = "", method: str = "esop") -> Circuit:
    """Map each (cube, asserted output column) pair to one Toffoli gate.

    The circuit spans n+m qubits: the first n carry and preserve the domain
    value, the last m start as ancilla and end as a XOR of their initial
    value with the function outputs.
    """
    n, m = cubes.n, cubes.m
    gates = []
    for cube in cubes.cubes:
        controls = tuple(
            (col, POSITIVE if ch == "1" else NEGATIVE)
            for col, ch in enumerate(cube.inputs)
            if ch != "-"
        )
        for j, mark in enumerate(cube.outputs):
            if mark == "1":
                gates.append(mcx(n + j, controls))
    return Circuit(
        width=n + m,
        gates=gates,
        roles_in=(ROLE_INPUT,) * n + (ROLE_ANCILLA,) * m,
        roles_out=(ROLE_INPUT,) * n + (ROLE_OUTPUT,) * m,
        source=source,
        method=method,
    )
