// Copyright 2026 The dimcert Authors
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

#ifndef DIMCERT_DIMCERT_HPP
#define DIMCERT_DIMCERT_HPP

#include "dimcert/certify.hpp"
#include "dimcert/common.hpp"
#include "dimcert/counts.hpp"
#include "dimcert/ingest.hpp"
#include "dimcert/io.hpp"
#include "dimcert/labels.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/pmatrix.hpp"
#include "dimcert/prep.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/sim.hpp"
#include "dimcert/simplex.hpp"
#include "dimcert/svd.hpp"

#endif  // DIMCERT_DIMCERT_HPP
