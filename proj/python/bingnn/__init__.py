# Copyright 2026 The bingnn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Binary graph neural networks with meta aggregators."""

from bingnn._bingnn import (
    CheckpointError,
    ConfigError,
    DataError,
    Dataset,
    Model,
    NanLossError,
    ana_value,
    collisions_csv,
    gen_regression,
    gen_topology_pairs,
    load_gtxt,
    normalize_config,
    parse_gtxt,
    run_cli,
    xnor_matmul,
)

__all__ = [
    "CheckpointError",
    "ConfigError",
    "DataError",
    "Dataset",
    "Model",
    "NanLossError",
    "ana_value",
    "collisions_csv",
    "gen_regression",
    "gen_topology_pairs",
    "load_gtxt",
    "normalize_config",
    "parse_gtxt",
    "run_cli",
    "xnor_matmul",
]
