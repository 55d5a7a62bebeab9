# Copyright 2026 The qeclie Authors
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

"""Error algebras, codes and transversal gates for spin systems."""

from qeclie._qeclie import (
    CapabilityError,
    Code,
    PreconditionError,
    certify_transversal_full,
    closure,
    code_422,
    code_multi_spin_cat,
    code_spin25,
    code_spin_cat,
    code_w_state,
    cz_gate,
    detection_residual,
    haar_unitary,
    kl_check,
    lindblad_superoperator,
    local_spin_error_basis,
    logical_error_estimate,
    min_grade_from_dims,
    phase_gate,
    singleton_check,
    spin_error_basis,
    spin_ops,
    sweep_csv,
    sx_gate,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "Code",
    "PreconditionError",
    "certify_transversal_full",
    "closure",
    "code_422",
    "code_multi_spin_cat",
    "code_spin25",
    "code_spin_cat",
    "code_w_state",
    "cz_gate",
    "detection_residual",
    "haar_unitary",
    "kl_check",
    "lindblad_superoperator",
    "local_spin_error_basis",
    "logical_error_estimate",
    "min_grade_from_dims",
    "phase_gate",
    "singleton_check",
    "spin_error_basis",
    "spin_ops",
    "sweep_csv",
    "sx_gate",
]
