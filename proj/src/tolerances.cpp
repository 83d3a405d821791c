// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/tolerances.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "brickwork/errors.hpp"

namespace brickwork
{

namespace
{

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 14> kFields = {{
    {"singular_denominator", &Tolerances::singular_denominator},
    {"eig_residual", &Tolerances::eig_residual},
    {"eig_cluster", &Tolerances::eig_cluster},
    {"defect_overlap", &Tolerances::defect_overlap},
    {"symmetry_commutator", &Tolerances::symmetry_commutator},
    {"state_validity", &Tolerances::state_validity},
    {"ep_discriminant", &Tolerances::ep_discriminant},
    {"ep_coalescence", &Tolerances::ep_coalescence},
    {"ep_collar", &Tolerances::ep_collar},
    {"expansion_agreement", &Tolerances::expansion_agreement},
    {"below_ep_drift", &Tolerances::below_ep_drift},
    {"at_ep_r_squared", &Tolerances::at_ep_r_squared},
    {"above_ep_trend", &Tolerances::above_ep_trend},
    {"above_ep_growth", &Tolerances::above_ep_growth},
}};

Field lookup(std::string_view name)
{
  for (const auto &[key, field] : kFields)
  {
    if (key == name)
    {
      return field;
    }
  }
  throw InvalidArgument("unknown tolerance '" + std::string(name) + "'");
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
  {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
  {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

double Tolerances::get(std::string_view name) const
{
  return this->*lookup(name);
}

void Tolerances::set(std::string_view name, double value)
{
  if (!std::isfinite(value) || value < 0.0)
  {
    throw InvalidArgument("tolerance '" + std::string(name) + "' must be finite and >= 0");
  }
  this->*lookup(name) = value;
}

const std::vector<std::string> &Tolerances::names()
{
  static const std::vector<std::string> all = []
  {
    std::vector<std::string> out;
    for (const auto &entry : kFields)
    {
      out.emplace_back(entry.first);
    }
    return out;
  }();
  return all;
}

void Tolerances::apply_overrides(std::string_view spec)
{
  while (!spec.empty())
  {
    const auto comma = spec.find(',');
    const auto item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty())
    {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
    {
      throw InvalidArgument("tolerance override '" + std::string(item) + "' lacks '='");
    }
    const auto key = trim(item.substr(0, eq));
    const auto text = trim(item.substr(eq + 1));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
      throw InvalidArgument("tolerance override '" + std::string(item) + "' has a bad value");
    }
    set(key, value);
  }
}

}  // namespace brickwork
