"""fieldsynth: deterministic synthetic soybean-field imagery with labels."""

__version__ = "0.1.0"
