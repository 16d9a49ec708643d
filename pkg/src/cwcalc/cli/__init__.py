from .evaluate import EvalConfig, eval_expr, evaluate, format_value
from .main import main, run
from .parser import ParseError, parse_expr, to_string

__all__ = ["EvalConfig", "ParseError", "eval_expr", "evaluate", "format_value", "main", "parse_expr", "run", "to_string"]
