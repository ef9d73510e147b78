from helmwave.experiments.config import (
    ExperimentConfig,
    ConfigError,
    EXPERIMENTS,
    bundled_configs,
    coarse_cells,
)
from helmwave.experiments.tables import run_table, table_runs, solve_entry
from helmwave.experiments.figures import run_figure
from helmwave.experiments.summary import (
    print_table_summary,
    print_figure_summary,
)
