#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "matrix.hpp"

namespace ttp2 {

inline constexpr double kTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// How distances relate to coordinates when both are given.
enum class Rounding { none, nearest };

enum class InstanceFormat { matrix, csv, json };

enum class InstanceKind { euclidean, unit, random_metric };

// A TTP-2 instance: an even number of teams and a symmetric, non-negative
// distance matrix with zero diagonal. Construction validates and throws
// InputError naming the offending cell.
class Instance {
 public:
  Instance() = default;

  Instance(int n, Matrix dist, std::vector<std::string> names = {},
           std::vector<Point> coords = {}, Rounding rounding = Rounding::none)
      : n_(n), dist_(std::move(dist)), names_(std::move(names)),
        coords_(std::move(coords)), rounding_(rounding) {
    validate();
  }

  int n() const { return n_; }
  double d(int i, int j) const { return dist_(i, j); }
  const Matrix& distances() const { return dist_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Point>& coords() const { return coords_; }
  bool has_coords() const { return !coords_.empty(); }
  Rounding rounding() const { return rounding_; }

  std::string team_name(int i) const {
    return names_.empty() ? std::to_string(i) : names_[static_cast<std::size_t>(i)];
  }

  bool operator==(const Instance&) const = default;

 private:
  void validate() {
    if (n_ <= 0) throw InputError("number of teams must be positive");
    if (n_ % 2 != 0) throw InputError("number of teams must be even, got " + std::to_string(n_));
    if (dist_.size() != n_) throw InputError("distance matrix is not " + std::to_string(n_) + "x" + std::to_string(n_));
    if (!names_.empty() && static_cast<int>(names_.size()) != n_)
      throw InputError("expected " + std::to_string(n_) + " names, got " + std::to_string(names_.size()));
    if (!coords_.empty() && static_cast<int>(coords_.size()) != n_)
      throw InputError("expected " + std::to_string(n_) + " coordinates, got " + std::to_string(coords_.size()));

    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        double v = dist_(i, j);
        if (!std::isfinite(v))
          throw InputError(cell_message("non-finite distance", i, j), i, j);
        if (v < 0.0)
          throw InputError(cell_message("negative distance", i, j), i, j);
      }
      if (dist_(i, i) > kTolerance)
        throw InputError(cell_message("non-zero diagonal entry", i, i), i, i);
      dist_(i, i) = 0.0;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        double a = dist_(i, j);
        double b = dist_(j, i);
        if (std::abs(a - b) > kTolerance) {
          std::ostringstream os;
          os << "asymmetric distance at (" << i << "," << j << ")=" << a << " vs (" << j << ","
             << i << ")=" << b;
          throw InputError(os.str(), i, j);
        }
        if (a != b) dist_(i, j) = dist_(j, i) = (a + b) / 2.0;
      }
    }
    if (!coords_.empty()) {
      for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
          double e = std::hypot(coords_[i].x - coords_[j].x, coords_[i].y - coords_[j].y);
          if (rounding_ == Rounding::nearest) e = std::nearbyint(e);
          if (std::abs(e - dist_(i, j)) > kTolerance * std::max(1.0, e))
            throw InputError(cell_message("distance disagrees with coordinates", i, j), i, j);
        }
      }
    }
  }

  static std::string cell_message(const char* what, int i, int j) {
    return std::string(what) + " at row " + std::to_string(i) + ", column " + std::to_string(j);
  }

  int n_ = 0;
  Matrix dist_;
  std::vector<std::string> names_;
  std::vector<Point> coords_;
  Rounding rounding_ = Rounding::none;
};

// Distances computed from coordinates, optionally rounded to the nearest integer.
inline Matrix euclidean_matrix(const std::vector<Point>& pts, Rounding rounding = Rounding::none) {
  int n = static_cast<int>(pts.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double e = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
      m(i, j) = rounding == Rounding::nearest ? std::nearbyint(e) : e;
    }
  return m;
}

inline Instance instance_from_coords(const std::vector<Point>& pts, Rounding rounding = Rounding::none,
                                     std::vector<std::string> names = {}) {
  return Instance(static_cast<int>(pts.size()), euclidean_matrix(pts, rounding), std::move(names), pts,
                  rounding);
}

// ---------------------------------------------------------------------------
// Metric check

struct TriangleViolation {
  int i = 0, j = 0, k = 0;   // d(i,k) > d(i,j) + d(j,k)
  double magnitude = 0.0;     // d(i,k) - d(i,j) - d(j,k)
};

struct MetricReport {
  bool symmetric = true;
  bool triangle_ok = true;
  std::optional<TriangleViolation> worst_violation;

  bool metric() const { return symmetric && triangle_ok; }
};

inline MetricReport check_metric(const Matrix& d, double tolerance = kTolerance) {
  MetricReport report;
  int n = d.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(d(i, j) - d(j, i)) > tolerance) report.symmetric = false;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        double excess = d(i, k) - d(i, j) - d(j, k);
        if (excess > tolerance &&
            (!report.worst_violation || excess > report.worst_violation->magnitude)) {
          report.triangle_ok = false;
          report.worst_violation = TriangleViolation{i, j, k, excess};
        }
      }
    }
  return report;
}

inline MetricReport check_metric(const Instance& inst, double tolerance = kTolerance) {
  return check_metric(inst.distances(), tolerance);
}

// ---------------------------------------------------------------------------
// Generation

inline std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::euclidean: return "euclidean";
    case InstanceKind::unit: return "unit";
    case InstanceKind::random_metric: return "random_metric";
  }
  return "?";
}

inline InstanceKind parse_instance_kind(std::string_view s) {
  if (s == "euclidean") return InstanceKind::euclidean;
  if (s == "unit") return InstanceKind::unit;
  if (s == "random_metric" || s == "random-metric") return InstanceKind::random_metric;
  throw InputError("unknown instance kind '" + std::string(s) + "'");
}

// Deterministic for a given (n, kind, seed) on a given standard library.
inline Instance generate_instance(int n, InstanceKind kind, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("generated instances need an even n >= 4, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  auto draw_points = [&] {
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
      p.x = coord(rng);
      p.y = coord(rng);
    }
    return pts;
  };

  switch (kind) {
    case InstanceKind::euclidean:
      return instance_from_coords(draw_points());
    case InstanceKind::unit: {
      Matrix m(n, 1.0);
      for (int i = 0; i < n; ++i) m(i, i) = 0.0;
      return Instance(n, std::move(m));
    }
    case InstanceKind::random_metric: {
      Matrix m = euclidean_matrix(draw_points());
      std::uniform_real_distribution<double> stretch(0.5, 1.5);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = m(i, j) * stretch(rng);
      // shortest-path closure makes the perturbed matrix metric again
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m(i, j) = std::min(m(i, j), m(i, k) + m(k, j));
      return Instance(n, std::move(m));
    }
  }
  throw std::invalid_argument("unknown instance kind");
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

inline std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline Instance load_matrix(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw InputError("empty input: expected team count");
  auto count = parse_double(token);
  if (!count || *count != std::floor(*count) || *count > 1e6)
    throw InputError("malformed team count '" + token + "'");
  int n = static_cast<int>(*count);
  if (n <= 0) throw InputError("number of teams must be positive");
  if (n % 2 != 0) throw InputError("number of teams must be even, got " + std::to_string(n));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  while (in >> token) {
    int idx = static_cast<int>(values.size());
    int row = idx / n, col = idx % n;
    if (idx >= n * n)
      throw InputError("non-square matrix: more than " + std::to_string(n * n) + " entries", row, col);
    auto v = parse_double(token);
    if (!v)
      throw InputError("malformed token '" + token + "' at row " + std::to_string(row) + ", column " +
                           std::to_string(col),
                       row, col);
    values.push_back(*v);
  }
  if (values.size() != static_cast<std::size_t>(n) * n) {
    int idx = static_cast<int>(values.size());
    throw InputError("non-square matrix: expected " + std::to_string(n * n) + " entries, found " +
                         std::to_string(idx),
                     idx / n, idx % n);
  }
  return Instance(n, Matrix(n, std::move(values)));
}

inline Instance load_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split(line, ','));
  }
  if (rows.empty()) throw InputError("empty CSV input");

  std::vector<std::string> names;
  bool header = std::any_of(rows.front().begin(), rows.front().end(),
                            [](const std::string& f) { return !parse_double(f).has_value(); });
  if (header) {
    for (auto& f : rows.front()) names.push_back(trim(f));
    rows.erase(rows.begin());
  }
  int n = static_cast<int>(rows.size());
  if (n == 0) throw InputError("CSV input has a header but no rows");
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw InputError("header has " + std::to_string(names.size()) + " names but there are " +
                         std::to_string(n) + " rows",
                     0);
  std::vector<double> values;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw InputError("non-square matrix: row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " columns, expected " + std::to_string(n),
                       r);
    for (int c = 0; c < n; ++c) {
      auto v = parse_double(rows[r][c]);
      if (!v)
        throw InputError("malformed token '" + trim(rows[r][c]) + "' at row " + std::to_string(r) +
                             ", column " + std::to_string(c),
                         r, c);
      values.push_back(*v);
    }
  }
  if (n % 2 != 0) throw InputError("number of teams must be even, got " + std::to_string(n));
  return Instance(n, Matrix(n, std::move(values)), std::move(names));
}

inline Instance load_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("instance JSON must be an object");
  try {
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    std::vector<Point> coords;
    if (j.contains("coords"))
      for (auto& c : j.at("coords")) {
        if (!c.is_array() || c.size() != 2) throw InputError("each coordinate must be [x, y]");
        coords.push_back({c[0].get<double>(), c[1].get<double>()});
      }
    Rounding rounding = Rounding::none;
    if (j.contains("rounding")) {
      auto r = j.at("rounding").get<std::string>();
      if (r == "nearest") rounding = Rounding::nearest;
      else if (r != "none") throw InputError("unknown rounding mode '" + r + "'");
    }
    int n = j.contains("n") ? j.at("n").get<int>()
                            : static_cast<int>(j.contains("dist") ? j.at("dist").size() : coords.size());
    if (n <= 0) throw InputError("number of teams must be positive");
    if (n % 2 != 0) throw InputError("number of teams must be even, got " + std::to_string(n));
    if (!j.contains("dist")) {
      if (coords.empty()) throw InputError("instance JSON needs 'dist' or 'coords'");
      if (static_cast<int>(coords.size()) != n)
        throw InputError("expected " + std::to_string(n) + " coordinates");
      auto dist = euclidean_matrix(coords, rounding);
      return Instance(n, std::move(dist), std::move(names), std::move(coords), rounding);
    }
    const auto& rows = j.at("dist");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw InputError("non-square matrix: 'dist' must have " + std::to_string(n) + " rows");
    std::vector<double> values;
    for (int r = 0; r < n; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
        throw InputError("non-square matrix: row " + std::to_string(r) + " must have " +
                             std::to_string(n) + " entries",
                         r);
      for (int c = 0; c < n; ++c) {
        if (!rows[r][c].is_number())
          throw InputError("malformed token " + rows[r][c].dump() + " at row " + std::to_string(r) +
                               ", column " + std::to_string(c),
                           r, c);
        values.push_back(rows[r][c].get<double>());
      }
    }
    return Instance(n, Matrix(n, std::move(values)), std::move(names), std::move(coords), rounding);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid instance JSON: ") + e.what());
  }
}

}  // namespace detail

inline std::string to_string(InstanceFormat f) {
  switch (f) {
    case InstanceFormat::matrix: return "matrix";
    case InstanceFormat::csv: return "csv";
    case InstanceFormat::json: return "json";
  }
  return "?";
}

inline InstanceFormat parse_instance_format(std::string_view s) {
  if (s == "matrix" || s == "txt") return InstanceFormat::matrix;
  if (s == "csv") return InstanceFormat::csv;
  if (s == "json") return InstanceFormat::json;
  throw InputError("unknown instance format '" + std::string(s) + "'");
}

// Picks a format from a file name's extension; anything unknown is a plain matrix.
inline InstanceFormat format_from_path(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return InstanceFormat::matrix;
  auto ext = path.substr(dot + 1);
  if (ext == "csv") return InstanceFormat::csv;
  if (ext == "json") return InstanceFormat::json;
  return InstanceFormat::matrix;
}

inline Instance load_instance(std::istream& in, InstanceFormat format) {
  switch (format) {
    case InstanceFormat::matrix: return detail::load_matrix(in);
    case InstanceFormat::csv: return detail::load_csv(in);
    case InstanceFormat::json: return detail::load_json(in);
  }
  throw InputError("unknown instance format");
}

inline Instance load_instance_string(const std::string& text, InstanceFormat format) {
  std::istringstream in(text);
  return load_instance(in, format);
}

// The matrix format keeps only distances; CSV adds names; JSON keeps everything.
inline void emit_instance(const Instance& inst, InstanceFormat format, std::ostream& out) {
  int n = inst.n();
  switch (format) {
    case InstanceFormat::matrix:
      out << n << '\n';
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out << (j ? " " : "") << detail::format_double(inst.d(i, j));
        out << '\n';
      }
      return;
    case InstanceFormat::csv:
      if (!inst.names().empty()) {
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << inst.names()[i];
        out << '\n';
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out << (j ? "," : "") << detail::format_double(inst.d(i, j));
        out << '\n';
      }
      return;
    case InstanceFormat::json: {
      nlohmann::json j;
      j["n"] = n;
      auto dist = nlohmann::json::array();
      for (int i = 0; i < n; ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < n; ++k) row.push_back(inst.d(i, k));
        dist.push_back(std::move(row));
      }
      j["dist"] = std::move(dist);
      if (!inst.names().empty()) j["names"] = inst.names();
      if (inst.has_coords()) {
        auto coords = nlohmann::json::array();
        for (auto& p : inst.coords()) coords.push_back({p.x, p.y});
        j["coords"] = std::move(coords);
        j["rounding"] = inst.rounding() == Rounding::nearest ? "nearest" : "none";
      }
      out << j.dump(2) << '\n';
      return;
    }
  }
}

inline std::string emit_instance_string(const Instance& inst, InstanceFormat format) {
  std::ostringstream os;
  emit_instance(inst, format, os);
  return os.str();
}

}  // namespace ttp2
