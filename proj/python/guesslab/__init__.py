# Copyright 2026 The Guesslab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the guesslab C++ library.

Structured values (models, records, nets, programs, configs) cross the
boundary as JSON; these wrappers accept and return plain dicts.
"""

import json

from . import _guesslab
from ._guesslab import (
    GuesslabError,
    __version__,
    gate_sequence_error,
    min_sample_size,
    sample_size,
    spectral_norm,
    statistical_distance,
    vector_distance_bound,
)

__all__ = [
    "GuesslabError",
    "__version__",
    "analyze_net",
    "calibrate",
    "fit_model",
    "gate_sequence_error",
    "min_sample_size",
    "model_record_distance",
    "orthogonal_pair",
    "outcome_distribution",
    "run_tmp",
    "sample_size",
    "simulate_net",
    "spectral_norm",
    "statistical_distance",
    "vector_distance_bound",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def outcome_distribution(model, command):
    return json.loads(_guesslab.outcome_distribution(_text(model), command))


def fit_model(record, random_phases=False, seed=0, padding_dim=0):
    return json.loads(_guesslab.fit_model(_text(record), random_phases, seed, padding_dim))


def orthogonal_pair(record):
    a, b = _guesslab.orthogonal_pair(_text(record))
    return json.loads(a), json.loads(b)


def model_record_distance(model, record):
    return _guesslab.model_record_distance(_text(model), _text(record))


def simulate_net(net, max_steps=100):
    return json.loads(_guesslab.simulate_net(_text(net), max_steps))


def analyze_net(net, bound=100000):
    return json.loads(_guesslab.analyze_net(_text(net), bound))


def run_tmp(program, tape="", inputs=(), max_steps=10000):
    return json.loads(_guesslab.run_tmp(_text(program), tape, list(inputs), max_steps))


def calibrate(config, offset, tilt=0.0, instrument_seed=0):
    return json.loads(_guesslab.calibrate(_text(config), offset, tilt, instrument_seed))
