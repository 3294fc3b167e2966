// Copyright 2026 The pagelab Authors
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

#include "pagelab/common.hpp"
#include "pagelab/entropy.hpp"
#include "pagelab/io.hpp"
#include "pagelab/page_lab.hpp"
#include "pagelab/pauli.hpp"
#include "pagelab/rng.hpp"
#include "pagelab/sampler.hpp"
#include "pagelab/state.hpp"
#include "pagelab/stats.hpp"
