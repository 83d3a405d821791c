// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "brickwork/cli.hpp"

namespace brickwork::cli
{

std::string format_double(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace
{

std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (const char c : s)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell &c)
{
  return std::visit(
      [](const auto &v) -> std::string
      {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>)
        {
          return format_double(v);
        }
        else if constexpr (std::is_same_v<V, long long>)
        {
          return std::to_string(v);
        }
        else if constexpr (std::is_same_v<V, bool>)
        {
          return v ? "true" : "false";
        }
        else
        {
          return csv_field(v);
        }
      },
      c);
}

std::string json_cell(const Cell &c)
{
  return std::visit(
      [](const auto &v) -> std::string
      {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>)
        {
          return std::isfinite(v) ? format_double(v) : "null";
        }
        else if constexpr (std::is_same_v<V, long long>)
        {
          return std::to_string(v);
        }
        else if constexpr (std::is_same_v<V, bool>)
        {
          return v ? "true" : "false";
        }
        else
        {
          return nlohmann::json(v).dump();
        }
      },
      c);
}

}  // namespace

std::string render_csv(const Table &t)
{
  std::ostringstream os;
  for (const auto &[k, v] : t.metadata)
  {
    os << "# " << k << ": " << v << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
  {
    os << (i ? "," : "") << csv_field(t.columns[i]);
  }
  os << '\n';
  for (const auto &row : t.rows)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      os << (i ? "," : "") << csv_cell(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table &t)
{
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto &[k, v] : t.metadata)
  {
    meta[k] = v;
  }
  std::ostringstream os;
  os << "{\n  \"metadata\": " << meta.dump() << ",\n  \"columns\": "
     << nlohmann::json(t.columns).dump() << ",\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i)
    {
      os << (i ? ", " : "") << json_cell(t.rows[r][i]);
    }
    os << ']';
  }
  os << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

}  // namespace brickwork::cli
