// Copyright 2026 The VQF Authors
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

#include "vqf/clause.hpp"
#include "vqf/clause_gen.hpp"
#include "vqf/density.hpp"
#include "vqf/dyadic.hpp"
#include "vqf/errors.hpp"
#include "vqf/instances.hpp"
#include "vqf/optimizer.hpp"
#include "vqf/pipeline.hpp"
#include "vqf/qaoa.hpp"
#include "vqf/relation_store.hpp"
#include "vqf/rng.hpp"
#include "vqf/scaling.hpp"
#include "vqf/simplifier.hpp"
#include "vqf/spin_polynomial.hpp"
