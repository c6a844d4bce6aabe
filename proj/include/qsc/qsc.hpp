// Copyright 2026 The QSC Authors
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

/// @file
/// Umbrella header for the whole library.
#pragma once

#include "qsc/algos/amplify.hpp"
#include "qsc/algos/controlled.hpp"
#include "qsc/algos/fourier.hpp"
#include "qsc/algos/history.hpp"
#include "qsc/algos/lcu.hpp"
#include "qsc/algos/superchannel.hpp"
#include "qsc/algos/trotter.hpp"
#include "qsc/cli/app.hpp"
#include "qsc/cli/demo.hpp"
#include "qsc/cli/parser.hpp"
#include "qsc/cli/report.hpp"
#include "qsc/core/channel.hpp"
#include "qsc/core/error.hpp"
#include "qsc/core/gates.hpp"
#include "qsc/core/matrix.hpp"
#include "qsc/core/measure.hpp"
#include "qsc/core/pauli.hpp"
#include "qsc/core/random.hpp"
#include "qsc/core/register.hpp"
#include "qsc/core/rng.hpp"
#include "qsc/core/state_vector.hpp"
#include "qsc/qconv/encoder.hpp"
#include "qsc/seqexec/executor.hpp"
#include "qsc/seqexec/ir.hpp"
#include "qsc/seqexec/pipeline.hpp"
#include "qsc/seqexec/sequential.hpp"
#include "qsc/transistor/frame.hpp"
#include "qsc/transistor/transistor.hpp"
