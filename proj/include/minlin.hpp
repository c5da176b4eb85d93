// Copyright 2026 The minlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "minlin/aux_graph.hpp"
#include "minlin/biased_graph.hpp"
#include "minlin/boolrelax.hpp"
#include "minlin/covering.hpp"
#include "minlin/equations.hpp"
#include "minlin/error.hpp"
#include "minlin/format.hpp"
#include "minlin/generators.hpp"
#include "minlin/minsat.hpp"
#include "minlin/ring.hpp"
#include "minlin/rng.hpp"
#include "minlin/solver.hpp"
