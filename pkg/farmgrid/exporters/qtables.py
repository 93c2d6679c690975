"""Export of Q-tables to CSV files."""
import pandas as pd

from farmgrid.importers.qtables import QTABLE_COLUMNS


def write_qtable_csv(q, path):
    """Write a table as `hour,soc_bin,q_charge,q_discharge,q_idle`.

    One row per (hour, soc_bin) in lexicographic order, values in repr
    precision, so identical tables give identical files.
    """
    records = []
    for hour in range(q.shape[0]):
        for soc_bin in range(q.n_bins):
            row = q.values[hour, soc_bin]
            records.append(
                [hour, soc_bin] + [repr(float(v)) for v in row])
    frame = pd.DataFrame.from_records(records, columns=QTABLE_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_training_curve(curve, path):
    """Write per-episode total rewards as `episode,reward`."""
    frame = pd.DataFrame({
        "episode": range(len(curve)),
        "reward": [repr(float(r)) for r in curve]
    })
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
