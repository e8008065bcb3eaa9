# Copyright 2026 The hgbt Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Histogram gradient boosted trees."""

from ._hgbt import (
    ContractError,
    CutMatrix,
    DataMatrix,
    Error,
    IoError,
    Model,
    PackedBuffer,
    ParseError,
    QuantizedMatrix,
    SchemaError,
    ValidationError,
    bin_of,
    build_cuts,
    compress,
    eval_metric,
    load_csv,
    load_libsvm,
    logistic_gradients,
    make_synthetic,
    quantize,
    read_symbol,
    save_libsvm,
    sigmoid,
    squared_error_gradients,
    symbol_bits,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "CutMatrix",
    "DataMatrix",
    "Error",
    "IoError",
    "Model",
    "PackedBuffer",
    "ParseError",
    "QuantizedMatrix",
    "SchemaError",
    "ValidationError",
    "bin_of",
    "build_cuts",
    "compress",
    "eval_metric",
    "load_csv",
    "load_libsvm",
    "logistic_gradients",
    "make_synthetic",
    "quantize",
    "read_symbol",
    "save_libsvm",
    "sigmoid",
    "squared_error_gradients",
    "symbol_bits",
    "train",
]
