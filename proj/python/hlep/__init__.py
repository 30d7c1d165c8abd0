# Copyright 2026 The hlep Authors
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

"""Hybrid-Liouvillian qubit dynamics, exceptional-point atlas and protocols."""

from ._hlep import (
    AtlasPoint,
    DegeneracyRecord,
    EigenCluster,
    EvolutionResult,
    IntegrationFault,
    ScanResult,
    SpectralData,
    SystemParams,
    apply_generator,
    build_hamiltonian,
    build_hybrid_liouvillian,
    build_nhh,
    char_poly,
    classify_degeneracy,
    devectorize,
    eigendecompose,
    eta,
    evolve,
    fourth_order_point,
    maximally_mixed,
    projector,
    run_validation,
    scan_numeric,
    second_order_surfaces,
    sweep_q0,
    third_order_line,
    validate_atlas,
    vectorize,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
