// Copyright 2026 The coexist Authors
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

#ifndef COEXIST_COEXIST_HPP_
#define COEXIST_COEXIST_HPP_

#include "coexist/analysis.hpp"
#include "coexist/equilibrium.hpp"
#include "coexist/error.hpp"
#include "coexist/game.hpp"
#include "coexist/metrics.hpp"
#include "coexist/model.hpp"
#include "coexist/simulate.hpp"

#endif  // COEXIST_COEXIST_HPP_
