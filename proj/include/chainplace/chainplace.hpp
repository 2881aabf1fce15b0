// Copyright 2026 The chainplace Authors
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

#ifndef CHAINPLACE_CHAINPLACE_HPP
#define CHAINPLACE_CHAINPLACE_HPP

#include "chainplace/costs.hpp"
#include "chainplace/error.hpp"
#include "chainplace/ilp.hpp"
#include "chainplace/io.hpp"
#include "chainplace/model.hpp"
#include "chainplace/scenario.hpp"
#include "chainplace/solver.hpp"

#endif  // CHAINPLACE_CHAINPLACE_HPP
