"""Classical long multiplication, the reference every other path is checked against."""
from . import backend
from .natural import Natural


def school_mul(a: Natural, b: Natural) -> Natural:
    """Exact ``a * b`` by digit-by-digit shift-and-add over the shorter operand."""
    return Natural(backend.school_mul(a.value, b.value))
