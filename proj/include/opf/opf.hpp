// Copyright 2026 The pathforest Authors
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

// Umbrella header for the whole library.

#include "opf/errors.hpp"
#include "opf/matrix.hpp"

#include "opf/math/distance.hpp"
#include "opf/math/metrics.hpp"
#include "opf/math/random.hpp"

#include "opf/core/heap.hpp"
#include "opf/core/knn_subgraph.hpp"
#include "opf/core/mst.hpp"
#include "opf/core/subgraph.hpp"

#include "opf/dataset/dataset.hpp"
#include "opf/dataset/io.hpp"
#include "opf/dataset/split.hpp"

#include "opf/models/knn_supervised.hpp"
#include "opf/models/learning.hpp"
#include "opf/models/model.hpp"
#include "opf/models/persistence.hpp"
#include "opf/models/predict.hpp"
#include "opf/models/semi_supervised.hpp"
#include "opf/models/supervised.hpp"
#include "opf/models/unsupervised.hpp"
