# qkernel/cli/__init__.py

from .main import build_parser, main
from .commands import COMMANDS, accuracy, run_compare
from .plot import GRID_SIZE, decision_grid, plot_decision_svg
