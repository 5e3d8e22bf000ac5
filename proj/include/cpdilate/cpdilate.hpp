// Copyright 2026 the cpdilate authors
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

// Umbrella header. io.hpp is kept separate because it pulls in the JSON
// dependency; include it directly when serializing.

#pragma once

#include "cpdilate/channel.hpp"
#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/dilation.hpp"
#include "cpdilate/eig.hpp"
#include "cpdilate/errors.hpp"
#include "cpdilate/kernel.hpp"
#include "cpdilate/rng.hpp"
#include "cpdilate/verify.hpp"
