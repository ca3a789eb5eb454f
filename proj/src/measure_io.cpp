#include "hsw/measure_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace hsw {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "cannot parse '" + std::string(field) + "' as a number");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

DiscreteMeasure<double> read_measure_csv(std::istream &in, bool weighted) {
  std::vector<std::vector<double>> rows;
  std::string text;
  std::size_t line = 0;
  std::size_t width = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view view = trim(text);
    if (view.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      row.push_back(parse_field(view.substr(start, comma - start), line));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (width == 0) {
      width = row.size();
      if (weighted && width < 2) throw ParseError(line, "weighted row needs a point and a weight");
    } else if (row.size() != width) {
      throw ParseError(line, "expected " + std::to_string(width) + " columns, found " +
                                 std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line == 0 ? 1 : line, "no support points");

  const Index n = static_cast<Index>(rows.size());
  const Index d = static_cast<Index>(weighted ? width - 1 : width);
  Matrix<double> x(n, d);
  Vector<double> w(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (weighted) w[i] = rows[static_cast<std::size_t>(i)].back();
  }
  if (!weighted) return DiscreteMeasure<double>::uniform(std::move(x));
  return DiscreteMeasure<double>(std::move(x), std::move(w));
}

DiscreteMeasure<double> read_measure_csv(const std::string &path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_measure_csv(in, weighted);
}

void write_points_csv(std::ostream &out, const Matrix<double> &points) {
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < points.cols(); ++j) {
      if (j) out << ',';
      out << format_double(points(i, j));
    }
    out << '\n';
  }
}

void write_measure_csv(std::ostream &out, const DiscreteMeasure<double> &measure, bool weighted) {
  const auto &x = measure.supports();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j) out << ',';
      out << format_double(x(i, j));
    }
    if (weighted) out << ',' << format_double(measure.weights()[i]);
    out << '\n';
  }
}

void write_measure_csv(const std::string &path, const DiscreteMeasure<double> &measure, bool weighted) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_measure_csv(out, measure, weighted);
}

}  // namespace hsw
