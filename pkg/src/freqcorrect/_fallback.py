"""Pure numpy versions of the compiled tally kernels.

Same signatures and results as ``_kernels``; used when the extension is not
built or ``FREQCORRECT_PURE`` is set.
"""
import numpy as np


def tally(profile: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    n = profile.shape[0]
    wins = np.zeros((m, m), dtype=np.int64)
    adj = np.zeros((m, m), dtype=np.int64)
    if n == 0 or m == 0:
        return wins, adj
    pos = np.empty_like(profile)
    rows = np.arange(n)[:, None]
    pos[rows, profile] = np.arange(m)
    wins += (pos[:, :, None] < pos[:, None, :]).sum(axis=0)
    if m > 1:
        np.add.at(adj, (profile[:, :-1].ravel(), profile[:, 1:].ravel()), 1)
    return wins, adj


def nice_flags(profile: np.ndarray, m: int) -> np.ndarray:
    wins, adj = tally(profile, m)
    deficit = np.maximum(profile.shape[0] // 2 + 1 - wins, 0)
    np.fill_diagonal(deficit, 0)
    # deficit[c, d] needs adj[d, c] witnesses
    return np.all(adj.T >= deficit, axis=1).astype(np.uint8)
