"""Prime powers as sums of terms of binary recurrences.

Bounds via linear forms in logarithms, Baker-Davenport reduction and an
exhaustive search over the reduced range.
"""

__version__ = "0.1.0"
