#pragma once

#include "hsw/measures.hpp"

#include <iosfwd>
#include <string>

namespace hsw {

// CSV measure format: one support point per row, d comma-separated decimal
// floats, no header. With `weighted` the last column is the atom's weight;
// otherwise weights are uniform.

/// Throws ParseError carrying the 1-based line number of the first bad row.
DiscreteMeasure<double> read_measure_csv(std::istream &in, bool weighted);
DiscreteMeasure<double> read_measure_csv(const std::string &path, bool weighted);

/// Writes 17 significant digits, so reading back is bit-exact.
void write_measure_csv(std::ostream &out, const DiscreteMeasure<double> &measure, bool weighted);
void write_measure_csv(const std::string &path, const DiscreteMeasure<double> &measure, bool weighted);

void write_points_csv(std::ostream &out, const Matrix<double> &points);

std::string format_double(double value);

}  // namespace hsw
