"""Anomaly detection in sequences of attributed graph edges.

Audit-log events are modeled as source-to-destination interactions with
typed attributes. The package trains edge-validity and next-event models
over per-user event sequences, scores events, and evaluates detectors with
daily recall-at-budget metrics.
"""

__version__ = "0.1.0"
