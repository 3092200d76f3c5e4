"""Static figure rendering for the simulator's CSV outputs."""

__version__ = "0.1.0"

from .render import (
    FigureInputError,
    FigureSpec,
    LabeledInput,
    parse_input_arg,
    render,
)

__all__ = ["FigureInputError", "FigureSpec", "LabeledInput", "parse_input_arg", "render"]
