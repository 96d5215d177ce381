#pragma once

#include <iosfwd>
#include <string>

#include "nlslab/field.hpp"

namespace nlslab {

/// Flat binary container. Header: dim, points_per_dim, box_length as
/// little-endian 64-bit values (two integers, one IEEE double); payload:
/// interleaved re/im 64-bit floats of the physical samples, row-major.
void write_field_binary(const Field& f, std::ostream& os);
void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(std::istream& is);
Field read_field_binary(const std::string& path);

/// CSV with one sample per row: index per dimension, then re, im with
/// 17 significant digits.
void write_field_csv(const Field& f, std::ostream& os);
void write_field_csv(const Field& f, const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace nlslab
