// Copyright 2026 The pomg-trunc Authors
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

#ifndef POMG_POMG_HPP_
#define POMG_POMG_HPP_

#include "pomg/assumptions.hpp"
#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"
#include "pomg/equilibrium.hpp"
#include "pomg/evaluation.hpp"
#include "pomg/filter.hpp"
#include "pomg/io.hpp"
#include "pomg/matrix_game.hpp"
#include "pomg/model.hpp"
#include "pomg/pipeline.hpp"
#include "pomg/strategy.hpp"
#include "pomg/truncation.hpp"

#endif  // POMG_POMG_HPP_
