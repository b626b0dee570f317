"""Sweep-kernel selection: the compiled core when the extension built, else
the pure Python twin.  Both expose snf_one/snf_sweep over flat chain-ring
tables; results must be identical, which the test suite checks."""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .core import Ring
from .errors import CapacityExceeded
from .ideals import canonical_generator_table
from .properties import _chain_tables
from .snf import _canonical_scalers

try:
    from . import _speedups as _impl

    COMPILED = True
except ImportError:
    from . import _speedups_py as _impl

    COMPILED = False


def active_kernel() -> str:
    return "compiled" if COMPILED else "python"


@dataclass
class ChainKernelTables:
    size: int
    zero: int
    one: int
    add: array
    sub: array
    mul: array
    lq: array
    vlen: array
    canon: array
    cscale: array
    is_unit: array
    reps: array


def chain_kernel_tables(ring: Ring) -> ChainKernelTables:
    """Flatten a chain ring into the kernel table set.  Cached."""
    hit = ring.cache.get("kernel_tables")
    if hit is not None:
        return hit
    ps, lq_rows = _chain_tables(ring)
    s = ring.size
    addt = array("i", [ring.add_table[x][y] for x in range(s) for y in range(s)])
    subt = array("i", [ring.sub(x, y) for x in range(s) for y in range(s)])
    mult = array("i", [ring.mul_table[x][y] for x in range(s) for y in range(s)])
    lq = array("i", [lq_rows[x].get(y, -1) for x in range(s) for y in range(s)])
    vlen = array("i", [len(ps[x]) for x in range(s)])
    canon = array("i", canonical_generator_table(ring))
    cscale = array("i", _canonical_scalers(ring))
    unit_set = frozenset(ring.units)
    is_unit = array("i", [1 if x in unit_set else 0 for x in range(s)])
    reps = array("i", [c for c in sorted(set(canon)) if c != ring.zero])
    hit = ChainKernelTables(s, ring.zero, ring.one, addt, subt, mult, lq,
                            vlen, canon, cscale, is_unit, reps)
    ring.cache["kernel_tables"] = hit
    return hit


def sweep_size(ring_size: int, m: int, n: int, rep_count: int, orbit: bool) -> int:
    mn = m * n
    if not orbit:
        return ring_size ** mn
    return 1 + sum(rep_count * ring_size ** (mn - 1 - lead) for lead in range(mn))


@dataclass
class SweepResult:
    ring_label: str
    shape: tuple
    checked: int
    failcode: int
    fail_matrix: object

    @property
    def ok(self):
        return self.failcode == 0


def snf_sweep(ring: Ring, m: int, n: int, orbit: bool = True,
              cap: int = 1_000_000_000) -> SweepResult:
    t = chain_kernel_tables(ring)
    expected = sweep_size(t.size, m, n, len(t.reps), orbit)
    if expected > cap:
        raise CapacityExceeded(f"sweep of {expected} matrices over cap {cap}")
    checked, code, bad = _impl.snf_sweep(
        t.size, m, n, t.zero, t.one, t.add, t.sub, t.mul, t.lq, t.vlen,
        t.canon, t.cscale, t.is_unit, t.reps, orbit)
    if code == 0 and checked != expected:
        raise AssertionError(f"sweep counted {checked}, expected {expected}")
    return SweepResult(ring.label, (m, n), checked, code,
                       None if bad is None else list(bad))


def snf_one(ring: Ring, rows):
    """Kernel run of a single matrix; returns (failcode, diagonal)."""
    t = chain_kernel_tables(ring)
    m, n = len(rows), len(rows[0])
    digits = array("i", [x for row in rows for x in row])
    return _impl.snf_one(t.size, m, n, t.zero, t.one, t.add, t.sub, t.mul,
                         t.lq, t.vlen, t.canon, t.cscale, t.is_unit, digits)
