// Copyright 2026 The divpop Authors
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

#ifndef DIVPOP_DIVPOP_HPP
#define DIVPOP_DIVPOP_HPP

#include "divpop/corpus.hpp"
#include "divpop/enumerate.hpp"
#include "divpop/error.hpp"
#include "divpop/game.hpp"
#include "divpop/io.hpp"
#include "divpop/matching_s2.hpp"
#include "divpop/mixed.hpp"
#include "divpop/popularity.hpp"
#include "divpop/reductions.hpp"
#include "divpop/simplex.hpp"
#include "divpop/transport.hpp"
#include "divpop/x3c.hpp"

#endif  // DIVPOP_DIVPOP_HPP
