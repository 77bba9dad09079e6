"""Figure renderer for argmarket sweep CSVs."""

from .render import (
    COMBINATION_COLUMNS,
    FigureSpec,
    NoMatchError,
    REQUIRED_COLUMNS,
    SchemaError,
    curves_for_combination,
    figure_filename,
    read_rows,
    render,
)

__all__ = [
    "COMBINATION_COLUMNS",
    "FigureSpec",
    "NoMatchError",
    "REQUIRED_COLUMNS",
    "SchemaError",
    "curves_for_combination",
    "figure_filename",
    "read_rows",
    "render",
]

__version__ = "0.1.0"
