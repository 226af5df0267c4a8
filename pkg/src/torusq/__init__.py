"""Quantum maps on the torus with diffusive noise: baker and cat propagators,
scar functions, and purity/fidelity decay experiments."""

__version__ = "0.1.0"
