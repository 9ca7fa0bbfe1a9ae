import datetime
import os

import pandas as pd

from qnet_pumping.__about__ import __title__, __version__
from qnet_pumping.network.pairs import enumerate_pairs

NO_TIMESTAMP_ENV = 'QNET_NO_TIMESTAMP'
TRACE_COLUMNS = ['t', 'strategy', 'seed', 'edge_list', 'log_sum', 'geo_mean', 'total', 'jain']
SUMMARY_COLUMNS = ['strategy', 'schedule', 'seed', 'horizon', 'log_sum', 'geo_mean', 'total', 'jain']


class TraceRecord:
    """State of one scheduler step. Record t=0 is the initial state."""
    def __init__(self, t, state_key, topology, served, xbar, metrics):
        self.t = t
        self.state_key = state_key
        self.topology = topology
        self.served = served
        self.xbar = xbar
        self.metrics = metrics

    @property
    def edges(self):
        return self.topology.edges

    def __eq__(self, other):
        if not isinstance(other, TraceRecord):
            return False
        return (self.t == other.t and self.state_key == other.state_key and self.topology == other.topology
                and tuple(self.served) == tuple(other.served) and self.xbar.tobytes() == other.xbar.tobytes()
                and self.metrics == other.metrics)

    def __repr__(self):
        return f'TraceRecord(t={self.t}, edges={self.topology.edge_list()!r}, log_sum={self.metrics.log_sum})'


class Trace:
    """Ordered trace records of one run plus the metadata needed to reproduce it"""
    def __init__(self, n, strategy, schedule, seed, process_type, rng_algorithm, records=None):
        self.n = n
        self.strategy = strategy
        self.schedule = schedule
        self.seed = seed
        self.process_type = process_type
        self.rng_algorithm = rng_algorithm
        self.records = records or []

    @property
    def horizon(self):
        return self.records[-1].t if self.records else 0

    @property
    def final(self):
        return self.records[-1]

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def __eq__(self, other):
        if not isinstance(other, Trace):
            return False
        return self.metadata() == other.metadata() and self.records == other.records

    def metadata(self):
        return {
            'package': f'{__title__}-{__version__}',
            'rng': self.rng_algorithm,
            'seed': self.seed,
            'strategy': self.strategy,
            'schedule': self.schedule,
            'process': self.process_type,
            'horizon': self.horizon,
        }

    def xbar_columns(self):
        return [f'xbar_{pair.a}_{pair.b}' for pair in enumerate_pairs(self.n)]

    def to_dataframe(self):
        rows = []
        for record in self.records:
            row = [record.t, self.strategy, self.seed, record.topology.edge_list(),
                   record.metrics.log_sum, record.metrics.geo_mean, record.metrics.total, record.metrics.jain]
            row.extend(record.xbar.tolist())
            rows.append(row)
        return pd.DataFrame(rows, columns=TRACE_COLUMNS + self.xbar_columns())

    def summary_row(self):
        return {
            'strategy': self.strategy,
            'schedule': self.schedule,
            'seed': self.seed,
            'horizon': self.horizon,
            **self.final.metrics.as_dict(),
        }

    def __repr__(self):
        return f'Trace(strategy={self.strategy!r}, seed={self.seed}, steps={len(self.records)})'


def timestamps_enabled(timestamp=True):
    return timestamp and os.environ.get(NO_TIMESTAMP_ENV) != '1'


def metadata_line(metadata, timestamp=True):
    parts = [f'{k}={v}' for k, v in metadata.items()]
    if timestamps_enabled(timestamp):
        now = datetime.datetime.now(datetime.timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')
        parts.append(f'generated={now}')
    return '# ' + ' '.join(parts) + '\n'


def write_trace_csv(trace, path, timestamp=True):
    with open(path, 'w', newline='') as fp:
        fp.write(metadata_line(trace.metadata(), timestamp=timestamp))
        trace.to_dataframe().to_csv(fp, index=False)
    return path


def write_summary_csv(traces, path):
    frame = pd.DataFrame([trace.summary_row() for trace in traces], columns=SUMMARY_COLUMNS)
    frame.to_csv(path, index=False)
    return path


def read_trace_csv(path):
    return pd.read_csv(path, comment='#', float_precision='round_trip')


def read_summary_csv(path):
    return pd.read_csv(path, float_precision='round_trip')
