// Copyright 2026 The Urysohn Authors
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

#include "urysohn/error.hpp"
#include "urysohn/rational.hpp"
#include "urysohn/metric_space.hpp"
#include "urysohn/katetov.hpp"
#include "urysohn/space_io.hpp"
#include "urysohn/independence.hpp"
#include "urysohn/random.hpp"
#include "urysohn/sir_axioms.hpp"
#include "urysohn/universe.hpp"
#include "urysohn/isometry.hpp"
#include "urysohn/word.hpp"
#include "urysohn/certificate.hpp"
#include "urysohn/move.hpp"
#include "urysohn/witnesses.hpp"
#include "urysohn/ladder.hpp"
