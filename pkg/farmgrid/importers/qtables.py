"""Import of Q-tables stored as CSV files."""
import os

import numpy as np
import pandas as pd

from farmgrid.data_structures.learning import QHyperparams, QTable
from farmgrid.exceptions import QLearningError
from farmgrid.resources import defaults


QTABLE_COLUMNS = ["hour", "soc_bin", "q_charge", "q_discharge", "q_idle"]


def load_qtable_csv(path, hyperparams=None):
    """Load a Q-table written by `write_qtable_csv`.

    Parameters
    ----------
    path : str or os.PathLike
    hyperparams : QHyperparams, optional
        Hyper-parameters to attach; the number of bins is taken from the file
    """
    if not os.path.isfile(path):
        raise QLearningError("Q-table file '{}' does not exist".format(path))
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (ValueError, pd.errors.ParserError) as e:
        raise QLearningError("Cannot parse Q-table file '{}': {}".format(path, e))
    if list(frame.columns) != QTABLE_COLUMNS:
        raise QLearningError(
            "Q-table file '{}' must have the columns {}".format(
                path, QTABLE_COLUMNS))
    if len(frame) == 0 or len(frame) % defaults.HOURS_PER_DAY != 0:
        raise QLearningError(
            "Q-table file '{}' has {} rows, expected 24 x n_bins".format(
                path, len(frame)))
    n_bins = len(frame) // defaults.HOURS_PER_DAY
    hours = frame["hour"].to_numpy()
    bins = frame["soc_bin"].to_numpy()
    expected_hours = np.repeat(np.arange(defaults.HOURS_PER_DAY), n_bins)
    expected_bins = np.tile(np.arange(n_bins), defaults.HOURS_PER_DAY)
    if not (np.array_equal(hours, expected_hours) and
            np.array_equal(bins, expected_bins)):
        raise QLearningError(
            "Q-table file '{}' rows must be ordered by (hour, soc_bin)".format(path))
    values = frame[QTABLE_COLUMNS[2:]].to_numpy(dtype=np.float64).reshape(
        defaults.HOURS_PER_DAY, n_bins, 3)
    if hyperparams is None:
        hyperparams = QHyperparams(n_bins=n_bins)
    elif hyperparams.n_bins != n_bins:
        hyperparams = QHyperparams.from_json(
            dict(hyperparams.to_json(), n_bins=n_bins))
    return QTable(n_bins, values, hyperparams)
