"""Step kernels for the walk samplers.

Kernels consume pre-drawn uniforms, one fixed-width row per step, so the
accelerated and pure-Python paths see the same random stream and produce
bit-identical traces. All arithmetic is plain IEEE double; no fused or
fast-math variants.

Step kind codes stored in trace arrays:
    0 walk step (moved along an existing edge)
    1 jump step (uniform node target accepted)
    2 rejection (proposal declined, walker stays put)
"""

from __future__ import annotations

import numpy as np

KIND_WALK = 0
KIND_JUMP = 1
KIND_REJECTION = 2

# Uniforms consumed per step, used by callers to shape the random blocks.
MHRW_DRAWS_PER_STEP = 3
RWWJ_DRAWS_PER_STEP = 2


def _has_out_edge(out_indices, lo, hi, target):
    """Binary search for ``target`` in the sorted slice [lo, hi)."""
    while lo < hi:
        mid = (lo + hi) // 2
        val = out_indices[mid]
        if val == target:
            return True
        if val < target:
            lo = mid + 1
        else:
            hi = mid
    return False


def _mhrw_steps(out_ptr, out_indices, n, walk_prob, uniforms, trace, kinds, cur):
    """Advance the Metropolis walk by ``uniforms.shape[0]`` steps.

    Per step: uniforms[t] = (branch, pick, accept). With probability
    ``walk_prob`` the proposal is a uniform out-neighbor (forced jump when
    the current node is dangling); otherwise a uniform node. Proposals
    landing on an existing out-edge are accepted by the degree-corrected
    rule; all other proposals are accepted with probability
    ``1 - walk_prob``. A declined proposal repeats the current node and
    still consumes one step of budget.
    """
    base = (1.0 - walk_prob) / n
    for t in range(uniforms.shape[0]):
        u_branch = uniforms[t, 0]
        u_pick = uniforms[t, 1]
        u_accept = uniforms[t, 2]
        lo = out_ptr[cur]
        deg_cur = out_ptr[cur + 1] - lo
        if deg_cur > 0 and u_branch < walk_prob:
            k = int(u_pick * deg_cur)
            if k >= deg_cur:
                k = deg_cur - 1
            nxt = int(out_indices[lo + k])
            edge_exists = True
        else:
            nxt = int(u_pick * n)
            if nxt >= n:
                nxt = n - 1
            edge_exists = _has_out_edge(out_indices, lo, out_ptr[cur + 1], nxt)
        if edge_exists:
            deg_nxt = out_ptr[nxt + 1] - out_ptr[nxt]
            if deg_nxt == 0:
                accept = True
            else:
                ratio = (base + walk_prob / deg_nxt) / (base + walk_prob / deg_cur)
                accept = u_accept < ratio
            kind = KIND_WALK
        else:
            accept = u_accept < (1.0 - walk_prob)
            kind = KIND_JUMP
        if accept:
            trace[t] = nxt
            kinds[t] = kind
            cur = nxt
        else:
            trace[t] = cur
            kinds[t] = KIND_REJECTION
    return cur


def _rwwj_steps(out_ptr, out_indices, n, jump_weight, uniforms, trace, kinds, cur):
    """Advance the jump-weighted random walk.

    Per step: uniforms[t] = (branch, pick). From a node of out-degree d the
    walker follows a uniform out-edge with probability d / (d + jump_weight)
    and otherwise jumps to a uniform node (possibly itself). Every step
    moves; there are no rejections.
    """
    for t in range(uniforms.shape[0]):
        u_branch = uniforms[t, 0]
        u_pick = uniforms[t, 1]
        lo = out_ptr[cur]
        deg_cur = out_ptr[cur + 1] - lo
        if u_branch * (deg_cur + jump_weight) < deg_cur:
            k = int(u_pick * deg_cur)
            if k >= deg_cur:
                k = deg_cur - 1
            nxt = int(out_indices[lo + k])
            kinds[t] = KIND_WALK
        else:
            nxt = int(u_pick * n)
            if nxt >= n:
                nxt = n - 1
            kinds[t] = KIND_JUMP
        trace[t] = nxt
        cur = nxt
    return cur


mhrw_steps = _mhrw_steps
rwwj_steps = _rwwj_steps
ACCELERATED = False

try:
    from numba import njit
except ImportError:
    pass
else:
    # Rebind before compiling so the kernels resolve the jitted search.
    _has_out_edge = njit(cache=True)(_has_out_edge)
    mhrw_steps = njit(cache=True)(_mhrw_steps)
    rwwj_steps = njit(cache=True)(_rwwj_steps)
    ACCELERATED = True
