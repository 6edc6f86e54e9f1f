// Copyright 2026 The qsvt-forge Authors
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

#ifndef QSVT_FORGE_QSVT_FORGE_HPP
#define QSVT_FORGE_QSVT_FORGE_HPP

#include "qsvt_forge/block_encoding.hpp"
#include "qsvt_forge/density.hpp"
#include "qsvt_forge/errors.hpp"
#include "qsvt_forge/estimation.hpp"
#include "qsvt_forge/generate.hpp"
#include "qsvt_forge/graddesc.hpp"
#include "qsvt_forge/io.hpp"
#include "qsvt_forge/linalg.hpp"
#include "qsvt_forge/matinv.hpp"
#include "qsvt_forge/polynomial.hpp"
#include "qsvt_forge/power_eig.hpp"
#include "qsvt_forge/sparse_matrix.hpp"

#define QSVT_FORGE_VERSION "0.1.0"

#endif
