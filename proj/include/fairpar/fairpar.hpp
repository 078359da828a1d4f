// Copyright 2026 The fairpar Authors
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

#include "fairpar/allocate.hpp"
#include "fairpar/error.hpp"
#include "fairpar/hardness.hpp"
#include "fairpar/io.hpp"
#include "fairpar/matching.hpp"
#include "fairpar/model.hpp"
#include "fairpar/oracle.hpp"
#include "fairpar/payments.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/matrix.hpp"
#include "fairpar/pram/reduce.hpp"
#include "fairpar/pram/scheduler.hpp"
#include "fairpar/pram/sort.hpp"
#include "fairpar/random.hpp"
#include "fairpar/subsidy.hpp"
#include "fairpar/verify.hpp"
