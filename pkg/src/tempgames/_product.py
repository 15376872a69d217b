"""Forward exploration of implicitly given games followed by a backward attractor.

Product games (visited-set products, expansions, periodic products) are never
materialized in full: states reachable from the initial state are enumerated
breadth-first, target states are left unexpanded, and the resulting finite
graph is handed to the attractor kernel.
"""

from collections import deque

import numpy as np

from . import _kernels
from .errors import StateSpaceLimit

DEFAULT_STATE_CAP = 50_000_000


class ProductSolution:
    """Solved reachability game over explicitly enumerated states.

    State ``0`` is always the initial state. ``rank`` and ``strategy`` follow
    the conventions of :func:`tempgames._kernels.attractor_ranks`.
    """

    def __init__(self, states, graph, target, rank, strategy):
        self.states = states
        self.graph = graph
        self.target = target
        self.rank = rank
        self.strategy = strategy

    @property
    def player1_wins(self):
        return bool(self.rank[0] >= 0)

    @property
    def size(self):
        return len(self.states)

    def winning_play(self):
        """States along the Player 1 strategy from the initial state.

        Only meaningful when every state on the way is Player 1 owned.
        """
        if not self.player1_wins:
            return None
        i = 0
        play = [self.states[0]]
        while self.rank[i] > 0:
            i = int(self.strategy[i])
            play.append(self.states[i])
        return play

    def strategy_map(self):
        return {
            self.states[u]: self.states[int(v)]
            for u, v in enumerate(self.strategy)
            if v >= 0
        }


def solve_forward(initial, successors, owner, is_target, state_cap=DEFAULT_STATE_CAP):
    """Enumerate reachable states and solve for Player 1 reaching a target.

    ``successors(state)`` returns successor states in a deterministic order,
    ``owner(state)`` returns 1 or 2 and ``is_target(state)`` a boolean.
    """
    index = {initial: 0}
    states = [initial]
    owners = [owner(initial)]
    target = [is_target(initial)]
    src = []
    dst = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if target[i]:
            continue
        for nxt in successors(states[i]):
            j = index.get(nxt)
            if j is None:
                j = len(states)
                if j >= state_cap:
                    raise StateSpaceLimit(f"product exceeds {state_cap} states")
                index[nxt] = j
                states.append(nxt)
                owners.append(owner(nxt))
                target.append(is_target(nxt))
                queue.append(j)
            src.append(i)
            dst.append(j)
    graph = _kernels.GameGraph(owners, src, dst)
    target = np.array(target, dtype=bool)
    mine = graph.owner == 1
    rank = _kernels.attractor_ranks(graph, target, mine)
    strategy = _kernels.attractor_strategy(graph, rank, mine)
    return ProductSolution(states, graph, target, rank, strategy)
