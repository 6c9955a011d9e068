"""Reference models used by the tests and demos."""

from .model import GFModel


def coin() -> GFModel:
    """Biased-coin convolution 1/((1 - z/3 - 2w/3)(1 - 2z/3 - w/3))."""
    return GFModel.from_pairs([("1/3", "2/3"), ("2/3", "1/3")])


def three_line() -> GFModel:
    """1/((1-z-w)(1-2z-w)(1-z-2w)); line 1 is inactive in the polygon."""
    return GFModel.from_pairs([(1, 1), (2, 1), (1, 2)])


def counterexample() -> GFModel:
    """1/((1-z-w)(1+z-w)): violates positivity, coefficients vanish for odd x."""
    return GFModel.from_pairs([(1, 1), (-1, 1)])


def single(a=1, b=1) -> GFModel:
    return GFModel.from_pairs([(a, b)])
