// Copyright 2026 The bvlab Authors
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

#include "bvlab/bitstring.hpp"
#include "bvlab/certify.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/oracles.hpp"
#include "bvlab/pipelines.hpp"
#include "bvlab/report.hpp"
#include "bvlab/schmidt.hpp"
#include "bvlab/state_vector.hpp"
#include "bvlab/sweep.hpp"
#include "bvlab/truth_table.hpp"
