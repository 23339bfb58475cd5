"""
Figure datasets: which grid, channel and measures each plotted panel needs.
Surfaces span J in [-4, 4] and T in [0.1, 3]; slices fix T (or J) at a few values.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np

from channels import channel_from_name
from errors import ConfigError
from files import write_records_csv
from sweep import BASE_COLUMNS, evaluate_grid

J_VALUES = tuple(np.linspace(-4.0, 4.0, 81))
T_VALUES = tuple(np.linspace(0.1, 3.0, 59))
SLICE_TEMPERATURES = (0.5, 1.0, 1.5, 2.0)
SLICE_COUPLINGS = (1.0, 2.0, 3.0, 4.0)
ALL_MEASURES = ("qd", "gqd1", "concurrence")


@dataclass(frozen=True)
class FigurePanel:
    filename: str
    j_values: Tuple[float, ...]
    t_values: Tuple[float, ...]
    measures: Tuple[str, ...]
    channel: str = "none"
    p: float = 0.0
    gamma: float = 0.0

    def channel_spec(self):
        return channel_from_name(self.channel, self.p, self.gamma)

    def columns(self):
        return BASE_COLUMNS + self.measures

    @property
    def rows(self):
        return len(self.j_values) * len(self.t_values)


def _surface_and_slices(fig_id, measures):
    return (
        FigurePanel(f"fig{fig_id}_surface.csv", J_VALUES, T_VALUES, measures),
        FigurePanel(f"fig{fig_id}_slices.csv", J_VALUES, SLICE_TEMPERATURES, measures),
    )


FIGURES = {
    1: _surface_and_slices(1, ("qd",)),
    2: _surface_and_slices(2, ("gqd1",)),
    3: (
        FigurePanel("fig3_vs_T.csv", SLICE_COUPLINGS, T_VALUES, ("concurrence",)),
        FigurePanel("fig3_vs_J.csv", J_VALUES, SLICE_TEMPERATURES, ("concurrence",)),
    ),
    4: (FigurePanel("fig4_slice.csv", J_VALUES, (1.0,), ALL_MEASURES),),
    5: (FigurePanel("fig5_surface.csv", J_VALUES, T_VALUES, ALL_MEASURES, "bf", p=0.5),),
    6: (FigurePanel("fig6_slice.csv", J_VALUES, (1.0,), ALL_MEASURES, "bf", p=0.5),),
    7: (FigurePanel("fig7_surface.csv", J_VALUES, T_VALUES, ALL_MEASURES, "gad", p=0.5, gamma=0.5),),
    8: (FigurePanel("fig8_slice.csv", J_VALUES, (1.0,), ALL_MEASURES, "gad", p=0.5, gamma=0.5),),
}


def figure_panels(fig_id):
    try:
        return FIGURES[int(fig_id)]
    except (KeyError, ValueError):
        raise ConfigError(f"unknown figure '{fig_id}' (expected 1-8)") from None


def figure_records(panel, workers=1, progress=None):
    return evaluate_grid(panel.j_values, panel.t_values, panel.channel_spec(), panel.measures,
                         workers=workers, progress=progress)


def figure_dataset(fig_id, out_dir, workers=1, progress=None):
    """Write every panel of one figure into out_dir; returns the paths"""
    panels = figure_panels(fig_id)
    out_dir = Path(out_dir)
    paths = []
    for panel in panels:
        records = figure_records(panel, workers, progress)
        paths.append(write_records_csv(out_dir / panel.filename, records, panel.columns()))
    return paths
