// Copyright 2026 The lexdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXDIST_LEXDIST_HPP
#define LEXDIST_LEXDIST_HPP

#include "lexdist/corpus.hpp"
#include "lexdist/distribution.hpp"
#include "lexdist/error.hpp"
#include "lexdist/evolution.hpp"
#include "lexdist/fitting.hpp"
#include "lexdist/frequency_table.hpp"
#include "lexdist/generators.hpp"
#include "lexdist/random.hpp"
#include "lexdist/special_functions.hpp"
#include "lexdist/trends.hpp"

#endif  // LEXDIST_LEXDIST_HPP
