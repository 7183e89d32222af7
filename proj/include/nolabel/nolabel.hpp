// Copyright 2026 The nolabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOLABEL_NOLABEL_HPP
#define NOLABEL_NOLABEL_HPP

#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/indistinguishability.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/labeled.hpp"
#include "nolabel/operators.hpp"
#include "nolabel/presets.hpp"
#include "nolabel/quantum_info.hpp"
#include "nolabel/slocc.hpp"
#include "nolabel/state.hpp"

#endif  // NOLABEL_NOLABEL_HPP
