#ifndef SPECNET_IO_HPP
#define SPECNET_IO_HPP

// Text formats.
//
//   SYMMAT   line 1 "SYMMAT n", then n rows of n whitespace-separated decimals.
//   NETSET   line 1 "NETSET N n", then N SYMMAT blocks.
//   sidecar  JSON {"networks": [{"kind": ..., params...}, ...]} with one noise
//            spec per network.
//   CSV      parcellation "vertex,region[,region_name]", labels "vertex,label";
//            vertices and labels are 1-based.
//
// Numbers are written with 17 significant digits so write -> read is exact.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "specnet/error.hpp"
#include "specnet/matrix.hpp"
#include "specnet/noise.hpp"
#include "specnet/stats.hpp"

namespace specnet::io {

using nlohmann::json;

inline std::string format_double(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace detail {

// Line-oriented tokenizer that remembers where each token came from.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split into tokens; false at EOF.
  bool next(std::vector<std::string_view>& tokens, std::vector<std::size_t>& columns) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      tokens.clear();
      columns.clear();
      std::size_t i = 0;
      while (i < line_.size()) {
        while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
        if (i >= line_.size()) break;
        const std::size_t start = i;
        while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t') ++i;
        tokens.emplace_back(line_.data() + start, i - start);
        columns.push_back(start + 1);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t line_no_ = 0;
};

inline double parse_number(std::string_view tok, std::size_t line, std::size_t col) {
  double v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, col, "expected a number, got '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, col, "non-finite value '" + std::string(tok) + "'");
  return v;
}

inline long parse_count(std::string_view tok, std::size_t line, std::size_t col) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1) {
    throw ParseError(line, col, "expected a positive integer, got '" + std::string(tok) + "'");
  }
  return v;
}

inline SymmetricMatrix read_symmat_block(LineReader& reader, long expected_n) {
  std::vector<std::string_view> tok;
  std::vector<std::size_t> col;
  if (!reader.next(tok, col)) throw ParseError(reader.line() + 1, 1, "missing SYMMAT header");
  if (tok.size() != 2 || tok[0] != "SYMMAT") {
    throw ParseError(reader.line(), 1, "expected header 'SYMMAT n'");
  }
  const long n = parse_count(tok[1], reader.line(), col[1]);
  if (expected_n > 0 && n != expected_n) {
    throw ParseError(reader.line(), col[1],
                     "matrix size " + std::to_string(n) + " does not match " + std::to_string(expected_n));
  }
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!reader.next(tok, col)) throw ParseError(reader.line() + 1, 1, "missing matrix row " + std::to_string(i + 1));
    if (static_cast<long>(tok.size()) != n) {
      throw ParseError(reader.line(), 1,
                       "row has " + std::to_string(tok.size()) + " values, expected " + std::to_string(n));
    }
    for (long j = 0; j < n; ++j) m(i, j) = parse_number(tok[j], reader.line(), col[j]);
  }
  return SymmetricMatrix::from_dense(m, 1e-9);
}

}  // namespace detail

inline void write_symmat(std::ostream& out, const SymmetricMatrix& a) {
  const Index n = a.size();
  out << "SYMMAT " << n << '\n';
  std::string line;
  for (Index i = 0; i < n; ++i) {
    line.clear();
    for (Index j = 0; j < n; ++j) {
      if (j) line += ' ';
      line += format_double(a(i, j));
    }
    line += '\n';
    out << line;
  }
}

inline SymmetricMatrix read_symmat(std::istream& in) {
  detail::LineReader reader(in);
  return detail::read_symmat_block(reader, 0);
}

inline void write_netset(std::ostream& out, const NetworkCollection& c) {
  c.validate();
  out << "NETSET " << c.size() << ' ' << c.vertex_count() << '\n';
  for (const auto& a : c.networks) write_symmat(out, a);
}

inline NetworkCollection read_netset(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string_view> tok;
  std::vector<std::size_t> col;
  if (!reader.next(tok, col)) throw ParseError(1, 1, "empty input, expected 'NETSET N n'");
  if (tok.size() != 3 || tok[0] != "NETSET") throw ParseError(reader.line(), 1, "expected header 'NETSET N n'");
  const long count = detail::parse_count(tok[1], reader.line(), col[1]);
  const long n = detail::parse_count(tok[2], reader.line(), col[2]);
  NetworkCollection out;
  out.networks.reserve(static_cast<std::size_t>(count));
  for (long s = 0; s < count; ++s) out.networks.push_back(detail::read_symmat_block(reader, n));
  if (reader.next(tok, col)) throw ParseError(reader.line(), col[0], "unexpected content after last matrix");
  return out;
}

inline json noise_to_json(const NoiseSpec& s) {
  const SubGamma g = s.subgamma();
  json j;
  switch (s.kind()) {
    case NoiseKind::gaussian:
      j = {{"kind", "gaussian"}, {"variance", s.first()}};
      break;
    case NoiseKind::laplace:
      j = {{"kind", "laplace"}, {"variance", s.first()}};
      break;
    case NoiseKind::centered_exponential:
      j = {{"kind", "exponential"}, {"rate", s.first()}};
      break;
    case NoiseKind::centered_gamma:
      j = {{"kind", "gamma"}, {"shape", s.first()}, {"scale", s.second()}};
      break;
    case NoiseKind::centered_bernoulli:
      j = {{"kind", "bernoulli"}, {"q", s.first()}};
      break;
  }
  j["nu"] = g.nu;
  j["b"] = g.b;
  return j;
}

/// Accepts either the object form or the "kind:params" string form. Derived
/// "nu"/"b" fields are ignored on input.
inline NoiseSpec noise_from_json(const json& j) {
  if (j.is_string()) return NoiseSpec::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("noise spec must be an object with a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw ConfigError("noise spec '" + kind + "' needs numeric '" + key + "'");
    }
    return j.at(key).get<double>();
  };
  std::vector<std::string> allowed{"kind", "nu", "b"};
  NoiseSpec spec = NoiseSpec::gaussian(0);
  try {
    if (kind == "gaussian") {
      spec = NoiseSpec::gaussian(num("variance"));
      allowed.push_back("variance");
    } else if (kind == "laplace") {
      spec = NoiseSpec::laplace(num("variance"));
      allowed.push_back("variance");
    } else if (kind == "exponential") {
      spec = NoiseSpec::centered_exponential(num("rate"));
      allowed.push_back("rate");
    } else if (kind == "gamma") {
      spec = NoiseSpec::centered_gamma(num("shape"), num("scale"));
      allowed.insert(allowed.end(), {"shape", "scale"});
    } else if (kind == "bernoulli") {
      spec = NoiseSpec::centered_bernoulli(num("q"));
      allowed.push_back("q");
    } else {
      throw ConfigError("unknown noise kind '" + kind + "'");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("noise spec '" + kind + "': unknown key '" + key + "'");
    }
  }
  return spec;
}

inline json noise_metadata_json(const std::vector<NoiseSpec>& specs) {
  json arr = json::array();
  for (const auto& s : specs) arr.push_back(noise_to_json(s));
  return json{{"networks", arr}};
}

inline std::vector<NoiseSpec> noise_metadata_from_json(const json& j) {
  if (!j.is_object() || !j.contains("networks") || !j.at("networks").is_array()) {
    throw ConfigError("noise metadata must be an object with a 'networks' array");
  }
  std::vector<NoiseSpec> out;
  for (const auto& e : j.at("networks")) out.push_back(noise_from_json(e));
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

inline long parse_int_field(const std::string& s, std::size_t line, std::size_t field) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, field, "expected an integer, got '" + s + "'");
  }
  return v;
}

// Reads "vertex,value[,extra]" rows; a non-numeric first row is a header.
inline std::vector<std::vector<std::string>> read_vertex_rows(std::istream& in, std::size_t min_fields,
                                                              std::size_t max_fields) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv(line);
    if (rows.empty() && line_no == 1 && !fields.empty() && !fields[0].empty() &&
        !(std::isdigit(static_cast<unsigned char>(fields[0][0])))) {
      continue;
    }
    if (fields.size() < min_fields || fields.size() > max_fields) {
      throw ParseError(line_no, 1, "expected " + std::to_string(min_fields) + " to " +
                                       std::to_string(max_fields) + " fields");
    }
    fields.push_back(std::to_string(line_no));
    rows.push_back(std::move(fields));
  }
  return rows;
}

// Orders rows by 1-based vertex id and checks ids are exactly 1..n.
inline std::vector<long> vertex_values(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError(1, 1, "no data rows");
  std::vector<long> values(n, 0);
  std::vector<char> seen(n, 0);
  for (const auto& r : rows) {
    const std::size_t line = std::stoul(r.back());
    const long v = parse_int_field(r[0], line, 1);
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw ParseError(line, 1, "vertex id " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
    }
    if (seen[v - 1]) throw ParseError(line, 1, "duplicate vertex id " + std::to_string(v));
    seen[v - 1] = 1;
    values[v - 1] = parse_int_field(r[1], line, 2);
  }
  return values;
}

}  // namespace detail

inline Parcellation read_parcellation(std::istream& in) {
  const auto rows = detail::read_vertex_rows(in, 2, 3);
  const auto values = detail::vertex_values(rows);
  std::vector<int> assignment(values.begin(), values.end());
  std::map<int, std::string> named;
  for (const auto& r : rows) {
    if (r.size() == 4 && !r[2].empty()) {
      const int region = static_cast<int>(detail::parse_int_field(r[1], std::stoul(r.back()), 2));
      named[region] = r[2];
    }
  }
  std::vector<std::string> names;
  if (!named.empty()) {
    int k = *std::max_element(assignment.begin(), assignment.end());
    names.resize(static_cast<std::size_t>(k));
    for (const auto& [region, name] : named) {
      if (region >= 1 && region <= k) names[region - 1] = name;
    }
  }
  try {
    return Parcellation::make(std::move(assignment), std::move(names));
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }
}

inline void write_parcellation(std::ostream& out, const Parcellation& p) {
  out << "vertex,region" << (p.names.empty() ? "" : ",region_name") << '\n';
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    out << i + 1 << ',' << p.assignment[i];
    if (!p.names.empty()) out << ',' << p.names[p.assignment[i] - 1];
    out << '\n';
  }
}

inline void write_labels(std::ostream& out, const std::vector<int>& labels) {
  out << "vertex,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i + 1 << ',' << labels[i] << '\n';
}

inline std::vector<int> read_labels(std::istream& in) {
  const auto values = detail::vertex_values(detail::read_vertex_rows(in, 2, 2));
  return {values.begin(), values.end()};
}

/// Dense matrix as CSV, one row per line, no header.
inline void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

inline NetworkCollection load_netset(const std::string& path) {
  auto in = open_input(path);
  return read_netset(in);
}

inline void save_netset(const std::string& path, const NetworkCollection& c) {
  auto out = open_output(path);
  write_netset(out, c);
}

inline SymmetricMatrix load_symmat(const std::string& path) {
  auto in = open_input(path);
  return read_symmat(in);
}

inline void save_symmat(const std::string& path, const SymmetricMatrix& a) {
  auto out = open_output(path);
  write_symmat(out, a);
}

inline json load_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

}  // namespace specnet::io

#endif  // SPECNET_IO_HPP
