"""General utility functions."""

import numpy as np


def derive_seed(seed: int, *keys: int) -> int:
    """Derive an independent child seed from a root seed and integer keys.

    The same (seed, keys) always yields the same child, so every random stream
    in a run is a pure function of the run seed.

    Args:
        seed: Root seed of the run
        keys: Stream identifiers (iteration number, stream tag, ...)

    Returns:
        Non-negative 63-bit integer seed
    """
    state = np.random.SeedSequence([seed, *keys]).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Create a numpy Generator for the stream identified by (seed, keys)."""
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def parse_int_list(text: str) -> list[int]:
    """Parse a comma separated list of integers ("1,2,3").

    Raises:
        ValueError: If any item is not an integer or the list is empty
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError(f"expected a comma separated list of integers, got {text!r}")
    return [int(item) for item in items]


def parse_number_list(text: str) -> list[float]:
    """Parse a comma separated list of numbers ("0.5,1.0,2")."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError(f"expected a comma separated list of numbers, got {text!r}")
    return [float(item) for item in items]


def parse_name_list(text: str) -> list[str]:
    """Parse a comma separated list of names ("baseline,dla")."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError(f"expected a comma separated list, got {text!r}")
    return items
