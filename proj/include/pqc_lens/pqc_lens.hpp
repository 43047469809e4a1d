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

#include "pqc_lens/analyzers.hpp"
#include "pqc_lens/ansatz.hpp"
#include "pqc_lens/circuit.hpp"
#include "pqc_lens/circuit_io.hpp"
#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"
#include "pqc_lens/projection.hpp"
#include "pqc_lens/report.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/stats.hpp"
#include "pqc_lens/trainer.hpp"
