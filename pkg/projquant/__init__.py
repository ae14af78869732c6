"""Projectively invariant quantization of second-order symbols, in exact arithmetic."""
