// Copyright 2026 The dfscodec Authors
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

#include "dfscodec/character_table.hpp"
#include "dfscodec/circuit.hpp"
#include "dfscodec/codec.hpp"
#include "dfscodec/core.hpp"
#include "dfscodec/group.hpp"
#include "dfscodec/isotypic.hpp"
#include "dfscodec/representation.hpp"
#include "dfscodec/rng.hpp"
#include "dfscodec/statevec.hpp"
#include "dfscodec/su2.hpp"
