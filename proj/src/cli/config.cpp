// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "brickwork/cli.hpp"
#include "brickwork/errors.hpp"

namespace brickwork::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front()))
  {
    s.remove_prefix(1);
  }
  while (!s.empty() && is_space(s.back()))
  {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view s, std::string_view whole)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
  {
    throw InvalidArgument("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> parts;
  while (true)
  {
    const auto k = s.find(sep);
    parts.push_back(trim(s.substr(0, k)));
    if (k == std::string_view::npos)
    {
      return parts;
    }
    s.remove_prefix(k + 1);
  }
}

}  // namespace

double parse_real(std::string_view text)
{
  const std::string_view s = trim(text);
  const auto at = s.find("pi");
  if (at == std::string_view::npos)
  {
    return parse_number(s, text);
  }
  std::string_view coef = trim(s.substr(0, at));
  std::string_view rest = trim(s.substr(at + 2));
  if (!coef.empty() && coef.back() == '*')
  {
    coef = trim(coef.substr(0, coef.size() - 1));
  }
  double c = 1.0;
  if (coef == "-")
  {
    c = -1.0;
  }
  else if (coef == "+" || coef.empty())
  {
    c = 1.0;
  }
  else
  {
    c = parse_number(coef, text);
  }
  double d = 1.0;
  if (!rest.empty())
  {
    if (rest.front() != '/')
    {
      throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
    }
    d = parse_number(trim(rest.substr(1)), text);
    if (d == 0.0)
    {
      throw InvalidArgument("division by zero in '" + std::string(text) + "'");
    }
  }
  return c * std::numbers::pi / d;
}

std::vector<double> parse_grid(std::string_view text)
{
  const std::string_view s = trim(text);
  if (s.empty())
  {
    return {};
  }
  if (s.find(':') != std::string_view::npos)
  {
    const auto parts = split(s, ':');
    if (parts.size() != 3)
    {
      throw InvalidArgument("range '" + std::string(text) + "' must be start:stop:count");
    }
    const double a = parse_real(parts[0]);
    const double b = parse_real(parts[1]);
    const double cnt = parse_number(parts[2], text);
    if (cnt < 1.0 || cnt != std::floor(cnt))
    {
      throw InvalidArgument("range count must be a positive integer in '" + std::string(text) + "'");
    }
    const auto n = static_cast<std::size_t>(cnt);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
    {
      out[k] = n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto part : split(s, ','))
  {
    out.push_back(parse_real(part));
  }
  return out;
}

std::vector<std::size_t> parse_count_list(std::string_view text)
{
  std::vector<std::size_t> out;
  for (const auto part : split(trim(text), ','))
  {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v == 0)
    {
      throw InvalidArgument("expected a positive integer in '" + std::string(text) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InvalidArgument("cannot open config file '" + path + "'");
  }
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
    {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty())
    {
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
    {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string_view key = trim(s.substr(0, eq));
    std::string_view value = trim(s.substr(eq + 1));
    if (key.starts_with("--"))
    {
      key.remove_prefix(2);
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
    {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty())
    {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": empty key");
    }
    out[std::string(key)] = std::string(value);
  }
  return out;
}

}  // namespace brickwork::cli
