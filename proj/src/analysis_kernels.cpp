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

#include "tracespl/analysis_kernels.hpp"

#include <bit>
#include <omp.h>

namespace tracespl::kernels {

namespace {

std::uint64_t bit(FeatureId id) noexcept
{
  return std::uint64_t{1} << id;
}

std::uint64_t candidate_count(CompiledModel const &model) noexcept
{
  return std::uint64_t{1} << (model.feature_count - 1);
}

// Candidate i maps to the mask with the root bit forced on.
std::uint64_t candidate(std::uint64_t i) noexcept
{
  return (i << 1) | 1U;
}

}  // namespace

CompiledModel compile(FeatureModel const &model)
{
  if (model.size() > 63)
  {
    throw ModelError("bitmask kernels support at most 63 features, model has " +
                     std::to_string(model.size()));
  }
  CompiledModel out;
  out.feature_count = model.size();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    Feature const &f = model.feature(id);
    if (f.parent)
    {
      out.child_parent.push_back({bit(id), bit(*f.parent)});
    }
    if (f.link == ParentLink::Mandatory && f.parent)
    {
      out.mandatory.push_back({bit(*f.parent), bit(id)});
    }
    if (f.group != GroupKind::And && !f.children.empty())
    {
      std::uint64_t members = 0;
      for (FeatureId c : f.children)
      {
        members |= bit(c);
      }
      out.groups.push_back({bit(id), members, f.group == GroupKind::Xor});
    }
  }
  for (auto const &c : model.constraints())
  {
    std::uint64_t const lhs = bit(model.id_of(c.lhs));
    std::uint64_t const rhs = bit(model.id_of(c.rhs));
    out.implications.push_back({lhs, rhs});
    if (c.op == ConstraintOp::Iff)
    {
      out.implications.push_back({rhs, lhs});
    }
  }
  return out;
}

bool check(CompiledModel const &model, std::uint64_t mask) noexcept
{
  if ((mask & 1U) == 0)
  {
    return false;
  }
  for (auto const &p : model.child_parent)
  {
    if ((mask & p.from) != 0 && (mask & p.to) == 0)
    {
      return false;
    }
  }
  for (auto const &p : model.mandatory)
  {
    if ((mask & p.from) != 0 && (mask & p.to) == 0)
    {
      return false;
    }
  }
  for (auto const &g : model.groups)
  {
    if ((mask & g.parent) == 0)
    {
      continue;
    }
    int const n = std::popcount(mask & g.members);
    if (n == 0 || (g.exclusive && n != 1))
    {
      return false;
    }
  }
  for (auto const &p : model.implications)
  {
    if ((mask & p.from) != 0 && (mask & p.to) == 0)
    {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> enumerate_serial(CompiledModel const &model)
{
  std::vector<std::uint64_t> out;
  if (model.feature_count == 0)
  {
    return out;
  }
  std::uint64_t const total = candidate_count(model);
  for (std::uint64_t i = 0; i < total; ++i)
  {
    std::uint64_t const mask = candidate(i);
    if (check(model, mask))
    {
      out.push_back(mask);
    }
  }
  return out;
}

std::vector<std::uint64_t> enumerate_parallel(CompiledModel const &model)
{
  if (model.feature_count == 0)
  {
    return {};
  }
  std::uint64_t const total = candidate_count(model);
  int const           max_threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(max_threads));

  // Contiguous blocks per thread keep the concatenation in ascending order.
#pragma omp parallel num_threads(max_threads)
  {
    auto const t       = static_cast<std::uint64_t>(omp_get_thread_num());
    auto const threads = static_cast<std::uint64_t>(omp_get_num_threads());
    std::uint64_t const begin = total * t / threads;
    std::uint64_t const end   = total * (t + 1) / threads;
    auto               &local = partial[t];
    for (std::uint64_t i = begin; i < end; ++i)
    {
      std::uint64_t const mask = candidate(i);
      if (check(model, mask))
      {
        local.push_back(mask);
      }
    }
  }

  std::size_t n = 0;
  for (auto const &p : partial)
  {
    n += p.size();
  }
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (auto const &p : partial)
  {
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::uint64_t count_serial(CompiledModel const &model)
{
  if (model.feature_count == 0)
  {
    return 0;
  }
  std::uint64_t const total = candidate_count(model);
  std::uint64_t       n     = 0;
  for (std::uint64_t i = 0; i < total; ++i)
  {
    n += check(model, candidate(i)) ? 1U : 0U;
  }
  return n;
}

std::uint64_t count_parallel(CompiledModel const &model)
{
  if (model.feature_count == 0)
  {
    return 0;
  }
  auto const    total = static_cast<std::int64_t>(candidate_count(model));
  std::uint64_t n     = 0;
#pragma omp parallel for reduction(+ : n) schedule(static)
  for (std::int64_t i = 0; i < total; ++i)
  {
    n += check(model, candidate(static_cast<std::uint64_t>(i))) ? 1U : 0U;
  }
  return n;
}

}  // namespace tracespl::kernels
