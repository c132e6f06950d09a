import math
import re

from src.utils.errors import DomainError

# "pi", "pi/4", "3*pi/8", "3pi/8", "-pi/2"
_PI_PATTERN = re.compile(r'^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$', re.IGNORECASE)


def parse_angle(text) -> float:
    """Parse an angle in radians, accepting plain numbers and fractions of pi"""
    if isinstance(text, (int, float)):
        return float(text)
    text = str(text).strip()
    match = _PI_PATTERN.match(text)
    if match:
        factor, divisor = match.groups()
        if factor in ("", "+"):
            factor = 1.0
        elif factor == "-":
            factor = -1.0
        else:
            try:
                factor = float(factor)
            except ValueError:
                raise DomainError(f"cannot parse angle {text!r}") from None
        value = factor * math.pi
        if divisor is not None:
            if float(divisor) == 0:
                raise DomainError(f"division by zero in angle {text!r}")
            value /= float(divisor)
        return value
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"cannot parse angle {text!r} (use radians or forms like pi/4)") from None


def parse_values(text: str, integer: bool = False) -> list:
    """
    Comma separated list, with start:stop:step ranges (inclusive stop).
    Angles may be given as fractions of pi.
    """
    values = []
    for part in str(text).split(','):
        part = part.strip()
        if not part:
            continue
        if ':' in part:
            pieces = part.split(':')
            if len(pieces) != 3:
                raise DomainError(f"range {part!r} must look like start:stop:step")
            start, stop, step = (parse_angle(p) for p in pieces)
            if step <= 0:
                raise DomainError(f"range step must be positive in {part!r}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values.extend(start + i * step for i in range(count))
        else:
            values.append(parse_angle(part))
    if not values:
        raise DomainError("no values given")
    if integer:
        if any(v != int(v) for v in values):
            raise DomainError(f"integer values expected, got {text!r}")
        return [int(v) for v in values]
    return values


def format_number(value: float, digits: int = 4) -> str:
    return f"{value:.{digits}g}"


def display_banner(title: str, lines=()) -> None:
    """Display a framed block in the console"""
    print(f"\n{'-' * 50}")
    print(f" {title} ")
    print(f"{'-' * 50}")

    for line in lines:
        print(f" {line}")

    if lines:
        print(f"{'-' * 50}")
