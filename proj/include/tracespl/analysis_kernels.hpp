//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

// Brute-force kernels over the 2^(n-1) assignments that select the root.
// Each has a serial reference and an OpenMP version; both must agree exactly,
// including the order of enumerated assignments (ascending mask order).

#include "tracespl/feature_model.hpp"

#include <cstdint>
#include <vector>

namespace tracespl::kernels {

/// Bitmask form of a model. Only valid for models with at most 63 features
/// whose constraints all resolve.
struct CompiledModel
{
  struct Pair
  {
    std::uint64_t from;
    std::uint64_t to;
  };
  struct Group
  {
    std::uint64_t parent;
    std::uint64_t members;
    bool          exclusive;
  };

  std::size_t        feature_count = 0;
  std::vector<Pair>  child_parent;   // child set => parent set
  std::vector<Pair>  mandatory;      // parent set => child set
  std::vector<Group> groups;
  std::vector<Pair>  implications;   // Iff is stored as two implications
};

CompiledModel compile(FeatureModel const &model);

bool check(CompiledModel const &model, std::uint64_t mask) noexcept;

std::vector<std::uint64_t> enumerate_serial(CompiledModel const &model);
std::vector<std::uint64_t> enumerate_parallel(CompiledModel const &model);

std::uint64_t count_serial(CompiledModel const &model);
std::uint64_t count_parallel(CompiledModel const &model);

}  // namespace tracespl::kernels
