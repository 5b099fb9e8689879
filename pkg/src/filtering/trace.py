# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Run Trace Module
License: MIT License
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np


@dataclass
class RunTrace:
    """
    Record of one simulated execution. `iterates[0]` is the input signal and
    `iterates[l]` the network state after round l. The optional fields are
    filled by the fluctuating and imputing simulators: `deviation` is
    y^(L) - S_{L:1} x, `imputed[l-1]` marks the (receiver, sender) entries
    whose value was estimated in round l, and the message counters compare
    the cross-edge transmissions against the full protocol.
    """
    iterates: List[np.ndarray]
    errors: Optional[np.ndarray] = None
    deviation: Optional[np.ndarray] = None
    imputed: List[np.ndarray] = field(default_factory=list)
    messages_sent: Optional[int] = None
    messages_full: Optional[int] = None

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def rounds(self) -> int:
        return len(self.iterates) - 1

    @property
    def imputed_count(self) -> int:
        return int(sum(int(mask.sum()) for mask in self.imputed))

    @property
    def message_savings(self) -> float:
        """Fraction of the full protocol's messages that were not sent."""
        if not self.messages_full:
            return 0.0
        return 1.0 - self.messages_sent / self.messages_full


def network_links(shifts: Sequence[np.ndarray]) -> np.ndarray:
    """
    Cross-edges of the network the shifts run on, as a boolean matrix in shift
    indexing: the union of the off-diagonal supports of all S_l.
    """
    links = np.zeros(shifts[0].shape, dtype=bool)
    for shift in shifts:
        links |= shift != 0.0
    np.fill_diagonal(links, False)
    return links


def count_messages(links: np.ndarray, active: np.ndarray) -> Tuple[int, int]:
    """
    Messages of one round: every cross-edge carries one value in the full
    protocol, and only active cross-edges do in a lossy one.

    Returns:
        Tuple[int, int]: (sent, full) for the round.
    """
    return int((links & active).sum()), int(links.sum())
