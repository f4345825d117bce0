// Copyright 2026 The annealab Authors
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

#include "annealab/anneal.hpp"
#include "annealab/audit.hpp"
#include "annealab/code.hpp"
#include "annealab/common.hpp"
#include "annealab/conditions.hpp"
#include "annealab/gadgets.hpp"
#include "annealab/gf2.hpp"
#include "annealab/hilbert.hpp"
#include "annealab/instance.hpp"
#include "annealab/io.hpp"
#include "annealab/model.hpp"
#include "annealab/program.hpp"
#include "annealab/spectral.hpp"
#include "annealab/sweep.hpp"
