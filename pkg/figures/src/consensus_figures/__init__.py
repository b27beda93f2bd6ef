from .render import EmptyInput, MissingColumns, load_results, render_boxplots

__all__ = ["EmptyInput", "MissingColumns", "load_results", "render_boxplots"]
