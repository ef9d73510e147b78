import pandas as pd
from rich.table import Table
from rich import print
from rich.box import SIMPLE_HEAD

from myterial import blue, salmon, pink_light

from helmwave.fixtures import VARIANT_COLORS, SMOOTHER_COLORS


def _iterations_footer(table):
    converged = table.loc[table.converged]
    if converged.empty:
        return "none converged"
    return f"{converged.iter.astype(int).mean():.1f} mean"


def print_table_summary(table, title=""):
    """
        Prints the iteration counts of a solver table, one row per run.
        P1 rows in blue, P2 rows in salmon.
    """
    tb = Table(
        header_style="bold green",
        show_lines=False,
        expand=False,
        box=SIMPLE_HEAD,
        show_footer=True,
        footer_style=f"{pink_light} bold",
        title=title,
    )
    tb.add_column("kappa", footer=f"{len(table)} runs")
    tb.add_column("P", justify="center")
    tb.add_column("scheme")
    tb.add_column("m2", justify="center")
    tb.add_column("level", justify="center")
    tb.add_column("DOFs", justify="right")
    tb.add_column("iter", justify="right", footer=_iterations_footer(table))
    tb.add_column("error", justify="right")

    for _, row in table.iterrows():
        kappa = (
            f"{row.kappa:g}"
            if pd.isna(row.q)
            else f"{row.kappa:g} (q={row.q:g})"
        )
        tb.add_row(
            kappa,
            str(row.p),
            row.scheme,
            str(row.m2),
            str(row.level),
            str(row.dofs),
            row.iter,
            "" if pd.isna(row.error) else f"{row.error:.2e}",
            style=blue if row.p == 1 else salmon,
        )
    print("\n", tb)


def print_figure_summary(curves, title=""):
    """ largest value of every curve of a figure """
    tb = Table(
        header_style="bold green",
        show_lines=False,
        expand=False,
        box=SIMPLE_HEAD,
        title=title,
    )
    tb.add_column("panel")
    tb.add_column("curve")
    tb.add_column("max", justify="right")
    tb.add_column("argmax", justify="right")

    for (panel, curve), samples in curves.groupby(
        ["panel", "curve"], sort=False
    ):
        peak = samples.value.idxmax()
        if "variant" in samples:
            color = VARIANT_COLORS[samples.variant.loc[peak]]
        else:
            color = SMOOTHER_COLORS[samples.smoother.loc[peak]]
        tb.add_row(
            str(panel),
            str(curve),
            f"{samples.value.loc[peak]:.4f}",
            f"{samples.theta.loc[peak]:.4f}",
            style=color,
        )
    print("\n", tb)
