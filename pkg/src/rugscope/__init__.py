"""Rug-pull forensics for UniswapV2-style DEXs."""

__version__ = "0.1.0"
