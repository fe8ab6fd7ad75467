// Copyright 2026 The gaussdecomp Authors
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

#pragma once

#include "gaussdecomp/bits.hpp"
#include "gaussdecomp/certificate.hpp"
#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/extent.hpp"
#include "gaussdecomp/fidelity.hpp"
#include "gaussdecomp/io.hpp"
#include "gaussdecomp/matchgate.hpp"
#include "gaussdecomp/net.hpp"
#include "gaussdecomp/optimize.hpp"
#include "gaussdecomp/parallel.hpp"
#include "gaussdecomp/random.hpp"
#include "gaussdecomp/rank.hpp"
#include "gaussdecomp/state.hpp"
#include "gaussdecomp/symmetry.hpp"
#include "gaussdecomp/triples.hpp"

namespace gaussdecomp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gaussdecomp
