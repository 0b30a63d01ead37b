"""Reversible-logic quantum oracle synthesis toolkit.

Pipelines start from .pla switching-function tables (or integer value
tables), embed them into bijections where needed, synthesize multiple-control
Toffoli cascades via transformation-based or ESOP-based backends, verify the
result against every specified minterm, and emit QASM or JSON netlists.
"""

__version__ = "0.1.0"

from . import circuit, cli, embed, emit, errors, esop, grover, pla, sim, tbs  # noqa: F401
