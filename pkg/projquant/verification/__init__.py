"""Executable checks of the invariance and equivariance statements."""
