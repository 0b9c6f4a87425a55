"""Deliberation analytics for online forum threads.

Ingests forum dumps into a workspace, selects topic-relevant threads,
labels posts with aspect-anchored argument stances, clusters similar
arguments, and scores the structure and intensity of the discussion
per thread (reply-tree metrics, PostRank, stance dependence, DIS).
"""

__version__ = "0.1.0"
