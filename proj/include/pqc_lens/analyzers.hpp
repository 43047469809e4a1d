// Copyright 2026 The pqc-lens Authors
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

#include "pqc_lens/analyzers/common.hpp"
#include "pqc_lens/analyzers/entanglement.hpp"
#include "pqc_lens/analyzers/expressibility.hpp"
#include "pqc_lens/analyzers/landscape.hpp"
#include "pqc_lens/analyzers/parameter_histogram.hpp"
#include "pqc_lens/analyzers/reachability.hpp"
#include "pqc_lens/analyzers/spectrum.hpp"
#include "pqc_lens/analyzers/training_path.hpp"
