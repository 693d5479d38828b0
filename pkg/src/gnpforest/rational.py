from fractions import Fraction

from .errors import ParameterError


def parse_rational(text) -> Fraction:
    """Parse ``"a/b"`` or a decimal string into an exact Fraction.

    Floats are accepted for convenience but converted through ``repr`` so
    that ``0.1`` becomes ``1/10`` rather than its binary expansion.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        text = repr(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational number: {text!r}") from exc


def probability(p) -> Fraction:
    p = parse_rational(p)
    if not 0 < p < 1:
        raise ParameterError(f"p must lie strictly between 0 and 1, got {p}")
    return p


def fraction_to_str(x: Fraction) -> str:
    """Exact text form: integer digits, or ``num/den``."""
    return str(x)
