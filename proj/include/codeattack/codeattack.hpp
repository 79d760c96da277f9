// Copyright 2026 The codeattack Authors.
//
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

#include "codeattack/attacks/accent.hpp"
#include "codeattack/attacks/alert.hpp"
#include "codeattack/attacks/beam.hpp"
#include "codeattack/attacks/mhm.hpp"
#include "codeattack/attacks/priority.hpp"
#include "codeattack/attacks/session.hpp"
#include "codeattack/attacks/style_transfer.hpp"
#include "codeattack/attacks/wir_random.hpp"
#include "codeattack/candidates.hpp"
#include "codeattack/corpus.hpp"
#include "codeattack/metrics.hpp"
#include "codeattack/syntax/snippet.hpp"
#include "codeattack/transforms.hpp"
#include "codeattack/types.hpp"
#include "codeattack/victim.hpp"
