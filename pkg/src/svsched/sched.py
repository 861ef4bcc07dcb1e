"""The two gate-execution schedulers and their index arithmetic.

A gate on target ``t`` over ``n`` qubits touches the state vector in
``2**(n-1)`` amplitude pairs; pair ``i`` starts at ``ith_cleared(i, t)`` and
its partner sits ``2**t`` higher. Controls only ever veto whole pairs, and
each control halves the surviving set.

Two interchangeable strategies execute a gate:

* ``baseline_apply`` visits every one of the ``2**(n-1)`` iterations and
  tests the controls per iteration before touching memory.
* ``optimized_apply`` enumerates only the ``2**(n - n_c - 1)`` iterations
  whose pairs satisfy all ``n_c`` controls, by mapping a reduced iteration
  index back to the global one with per-control skip intervals
  (``reduced_to_global``), and updates memory unconditionally.

Both write each surviving amplitude exactly once per gate with identical
arithmetic, so their results are bit-identical. Iterations within one gate
write disjoint pairs and may run on several threads; gates are sequential.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .core import Circuit, GateMatrix, GateOp, StateVector

# Below this many iterations a gate is not worth splitting across threads.
_MIN_CHUNK = 1 << 15


def ith_cleared(i, t: int):
    """Insert a 0 bit at position ``t`` of ``i``: ((i >> t) << (t+1)) | (i mod 2**t).

    Maps iteration index i to the first element of its amplitude pair (the
    basis index with bit t clear). Accepts an int or an integer ndarray.
    """
    return ((i >> t) << (t + 1)) | (i & ((1 << t) - 1))


def pair_indices(i, t: int):
    """Both basis indices of iteration i's pair: (p1, p1 + 2**t)."""
    p1 = ith_cleared(i, t)
    return p1, p1 + (1 << t)


def control_satisfied(p1, c: int):
    """True iff bit ``c`` of the pair's first basis index is 1.

    Because the two pair elements differ only in the target bit, testing p1
    decides the whole pair for any control c != t.
    """
    return (p1 >> c) & 1 == 1


def adjusted_control(c: int, t: int) -> int:
    """Re-index control ``c`` relative to target ``t``: c-1 if c > t, else c."""
    if c == t:
        raise ValueError("control equal to target has no adjusted index")
    return c - 1 if c > t else c


@dataclass(frozen=True)
class SkipStep:
    """One control's contribution to the reduced->global mapping."""

    adjusted_control: int
    skip_interval: int  # always 2**adjusted_control


def skip_steps(target: int, controls: tuple[int, ...]) -> tuple[SkipStep, ...]:
    """Precompute each control's adjusted index and skip interval, in order."""
    steps = []
    for c in controls:
        c_adj = adjusted_control(c, target)
        steps.append(SkipStep(c_adj, 1 << c_adj))
    return tuple(steps)


def reduced_to_global(i_r, target: int, controls: tuple[int, ...]):
    """Map a reduced iteration index to its global iteration index.

    For each control, taken in ascending qubit order, the index advances past
    the pairs that control rules out:

        i += (i // 2**c_adj + 1) * 2**c_adj

    Ascending control order is the validity condition of this formula and is
    enforced here. Accepts an int or an integer ndarray and is strictly
    increasing in i_r, so distinct reduced indices map to distinct global ones.
    """
    if any(a >= b for a, b in zip(controls, controls[1:])):
        raise ValueError(f"controls must be strictly ascending, got {controls}")
    i = i_r
    for step in skip_steps(target, tuple(controls)):
        s = step.skip_interval
        i = i + (i // s + 1) * s
    return i


def active_set_oracle(n: int, target: int, controls: tuple[int, ...]) -> set[int]:
    """Ground truth by brute force: every global iteration whose pair satisfies
    all controls. Enumerates all 2**(n-1) iterations; small n only."""
    active = set()
    for i in range(1 << (n - 1)):
        p1 = ith_cleared(i, target)
        if all(control_satisfied(p1, c) for c in controls):
            active.add(i)
    return active


class Strategy(str, Enum):
    BASELINE = "baseline"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class IterationPlan:
    """The resolved iteration set a scheduler will execute for one gate."""

    strategy: Strategy
    num_qubits: int
    target: int
    controls: tuple[int, ...]
    count: int


def executed_iteration_count(plan: IterationPlan) -> int:
    """Iterations the plan schedules: 2**(n-1) baseline, 2**(n-n_c-1) optimized."""
    if plan.strategy is Strategy.BASELINE:
        return 1 << (plan.num_qubits - 1)
    return 1 << (plan.num_qubits - 1 - len(plan.controls))


def iteration_plan(strategy: Strategy, num_qubits: int, gate: GateOp) -> IterationPlan:
    if gate.num_controls > num_qubits - 1 or gate.target >= num_qubits:
        raise ValueError(f"gate does not fit a {num_qubits}-qubit register")
    n_c = gate.num_controls if strategy is Strategy.OPTIMIZED else 0
    count = 1 << (num_qubits - 1 - n_c)
    return IterationPlan(strategy, num_qubits, gate.target, gate.controls, count)


def _check_gate(state: StateVector, gate: GateOp):
    n = state.num_qubits
    for q in (gate.target, *gate.controls):
        if q >= n:
            raise ValueError(f"qubit {q} out of range for a {n}-qubit state")


def _matrix_scalars(matrix: GateMatrix, dtype) -> tuple:
    # Cast once so single-precision states compute in single precision.
    s = dtype.type
    return s(matrix.a), s(matrix.b), s(matrix.c), s(matrix.d)


def _update_pairs(amps: np.ndarray, p1: np.ndarray, stride: int, mat: tuple):
    a, b, c, d = mat
    x = amps[p1]
    y = amps[p1 + stride]
    amps[p1] = a * x + b * y
    amps[p1 + stride] = c * x + d * y


def _run_chunked(count: int, threads: int, body: Callable[[int, int], None]):
    """Run body(lo, hi) over contiguous chunks of [0, count).

    Chunks write disjoint pairs, so any partition yields a bit-identical state.
    """
    if count == 0:
        return
    chunks = min(threads, count // _MIN_CHUNK) if threads > 1 else 1
    if chunks <= 1:
        body(0, count)
        return
    bounds = [count * k // chunks for k in range(chunks + 1)]
    with ThreadPoolExecutor(max_workers=chunks) as pool:
        futures = [
            pool.submit(body, bounds[k], bounds[k + 1]) for k in range(chunks)
        ]
        for f in futures:
            f.result()


def baseline_apply(
    state: StateVector, gate: GateOp, *, threads: int = 1, instrumented: bool = False
) -> int:
    """Execute a gate by visiting all 2**(n-1) iterations and checking controls.

    In the default fast mode each control test discards failing iterations
    before the next control is evaluated. With ``instrumented=True`` every
    control is evaluated for every iteration (no short-circuit), mirroring a
    statically scheduled kernel's honest per-iteration cost.

    Returns the number of iterations executed (always 2**(n-1)).
    """
    _check_gate(state, gate)
    n = state.num_qubits
    t = gate.target
    stride = 1 << t
    mat = _matrix_scalars(gate.matrix, state.amplitudes.dtype)
    amps = state.amplitudes

    def body(lo: int, hi: int):
        i = np.arange(lo, hi, dtype=np.int64)
        p1 = ith_cleared(i, t)
        if instrumented:
            perform = np.ones(p1.shape, dtype=bool)
            for c in gate.controls:
                perform &= (p1 >> c) & 1 == 1
            p1 = p1[perform]
        else:
            for c in gate.controls:
                p1 = p1[(p1 >> c) & 1 == 1]
                if p1.size == 0:
                    break
        if p1.size:
            _update_pairs(amps, p1, stride, mat)

    total = 1 << (n - 1)
    _run_chunked(total, threads, body)
    return total


def optimized_apply(state: StateVector, gate: GateOp, *, threads: int = 1) -> int:
    """Execute a gate scheduling only the control-satisfying iterations.

    Each of the 2**(n - n_c - 1) reduced indices is mapped to its global
    iteration index, and the pair update runs unconditionally: every scheduled
    iteration does useful work. The final state is bit-identical to
    ``baseline_apply``.

    Returns the number of iterations executed.
    """
    _check_gate(state, gate)
    n = state.num_qubits
    t = gate.target
    stride = 1 << t
    steps = skip_steps(t, gate.controls)
    mat = _matrix_scalars(gate.matrix, state.amplitudes.dtype)
    amps = state.amplitudes

    def body(lo: int, hi: int):
        i = np.arange(lo, hi, dtype=np.int64)
        for step in steps:
            s = step.skip_interval
            i += (i // s + 1) * s
        p1 = ith_cleared(i, t)
        _update_pairs(amps, p1, stride, mat)

    count = 1 << (n - 1 - gate.num_controls)
    _run_chunked(count, threads, body)
    return count


def apply_gate(
    state: StateVector,
    gate: GateOp,
    strategy: Strategy = Strategy.OPTIMIZED,
    *,
    threads: int = 1,
) -> int:
    """Execute one gate with the chosen strategy; returns iterations executed."""
    if strategy is Strategy.BASELINE:
        return baseline_apply(state, gate, threads=threads)
    return optimized_apply(state, gate, threads=threads)


def apply_circuit(
    state: StateVector,
    circuit: Circuit,
    strategy: Strategy = Strategy.OPTIMIZED,
    *,
    threads: int = 1,
) -> int:
    """Execute a circuit gate by gate (gates are strictly sequential).

    Returns the total number of iterations executed across all gates.
    """
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit is over {circuit.num_qubits} qubits, state over {state.num_qubits}"
        )
    executed = 0
    for gate in circuit.gates:
        executed += apply_gate(state, gate, strategy, threads=threads)
    return executed
