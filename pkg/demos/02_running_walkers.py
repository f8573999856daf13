"""
Driving the two random walkers over a graph
===========================================

The samplers explore a directed graph through out-edges only, the way a
crawler limited to "who does this account follow" would.  Both spend a
fixed step budget and record every visited node:

* ``mhrw`` -- a Metropolis-corrected walk that mixes uniform jumps with
  degree-balanced edge moves, so that in the long run every node is
  visited equally often.  Declined proposals repeat the current node and
  still consume budget.
* ``rwwj`` -- a plain walk with random jumps, where each node behaves as
  if it had ``jump_weight`` extra edges leading to uniformly random
  nodes.  Visits concentrate on high-out-degree nodes in a known way
  that the estimators undo later.
"""

import tempfile
from pathlib import Path

import walksample as ws

graph = ws.generate(ws.parse_gen_spec("erdos_renyi_directed:n=60,p=0.08,seed=5"))
print("graph: %d nodes, %d edges, %d dangling"
      % (graph.node_count, graph.edge_count,
         graph.stats()["dangling_nodes"]))

# ----------------------------------------------------------------------
# A SamplerConfig bundles the budget, the method parameters, and the
# seed.  The same seed always reproduces the same trace, bit for bit.
# ----------------------------------------------------------------------
config = ws.SamplerConfig(budget=400, walk_prob=0.85, jump_weight=10.0,
                          rng_seed=42)

walk = ws.mhrw_sample(graph, config)
print("\nmhrw trace, first 15 visits:", walk.trace[:15].tolist())
print("step kinds over the whole budget:", walk.step_counts())

# Rejected proposals stand still: wherever the kind code marks a
# rejection, the walker stays on the node it was already on.
import numpy as np
from walksample.walks import KIND_REJECTION

rejections = np.flatnonzero(walk.kinds == KIND_REJECTION)
if rejections.size:
    i = int(rejections[0])
    print("first rejection at step %d: node %d stays %d"
          % (i, walk.from_nodes()[i], walk.trace[i]))

# ----------------------------------------------------------------------
# The jump-walk has no rejections; every step is a walk or a jump, with
# the walk chance rising with the node's out-degree.
# ----------------------------------------------------------------------
jump_walk = ws.rwwj_sample(graph, config)
print("\nrwwj trace, first 15 visits:", jump_walk.trace[:15].tolist())
print("step kinds:", jump_walk.step_counts())

# ----------------------------------------------------------------------
# What a walk leaves behind: visited nodes (with multiplicity), the set
# of distinct discoveries, and every edge actually traversed.
# ----------------------------------------------------------------------
for name, w in (("mhrw", walk), ("rwwj", jump_walk)):
    print("\n%s after %d steps:" % (name, config.budget))
    print("  distinct nodes discovered:", len(w.distinct_nodes()))
    print("  distinct edges traversed :", len(w.collected_edges))

# The generic entry point dispatches on the method name, which is what
# the experiment pipeline uses internally.
same = ws.sample(graph, "mhrw", config)
print("\ndispatch by name reproduces the trace:",
      bool((same.trace == walk.trace).all()))

# ----------------------------------------------------------------------
# Traces serialize to a small text format that embeds the graph hash, so
# a stale or mismatched trace is caught at load time.
# ----------------------------------------------------------------------
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "walk.trace"
    ws.save_trace(walk, graph, path)
    replayed = ws.load_trace(path, graph)
    print("\ntrace file round-trips:",
          bool((replayed.trace == walk.trace).all()
               and (replayed.kinds == walk.kinds).all()))
    print("file header:", path.read_text().splitlines()[0])

# ----------------------------------------------------------------------
# Order estimation needs two independent node collections; split_halves
# divides one trace's distinct nodes by (seeded) coin flips.
# ----------------------------------------------------------------------
first, second = ws.split_halves(walk, rng_seed=7)
print("\nhalf-split of the mhrw discoveries: %d + %d nodes, overlap %d"
      % (len(first), len(second), len(first & second)))
