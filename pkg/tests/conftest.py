import random

import pytest

import plse
from plse.neighborhoods import apply_move, maximalize
from plse.state import SolutionState


def make_maximal_state(n, r, seed):
    """QC instance + a random maximal solution on it."""
    inst = plse.generate_qc(n, r, seed)
    mis = plse.transform(inst)
    state = SolutionState(mis)
    maximalize(state, random.Random(seed ^ 0xA5A5))
    return inst, mis, state


def drive(state, searches):
    """Exhaust the given searches first-improvement style; returns #moves."""
    moves = 0
    i = 0
    while i < len(searches):
        mv = searches[i](state)
        if mv is None:
            i += 1
            continue
        apply_move(state, mv)
        moves += 1
        i = 0
    return moves


@pytest.fixture
def tiny():
    """The 4-node instance: L = {(1,1,1)} on a 2x2 grid."""
    inst = plse.PlsInstance(2, frozenset({(1, 1, 1)}))
    return inst, plse.transform(inst)
