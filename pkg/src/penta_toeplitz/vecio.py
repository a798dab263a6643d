"""Plain-text vector files: one number per line, ``#`` lines are comments."""

import numpy as np

__all__ = ["format_vector", "parse_vector", "write_vector", "read_vector"]


def format_vector(x, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    # 17 significant digits round-trip every double
    lines += [format(float(v), ".17g") for v in np.asarray(x, dtype=np.float64)]
    return "\n".join(lines) + "\n"


def parse_vector(text: str) -> np.ndarray:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"line {lineno}: not a number: {line!r}") from None
    return np.array(values, dtype=np.float64)


def write_vector(path, x, comments=()):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_vector(x, comments))


def read_vector(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_vector(fh.read())
