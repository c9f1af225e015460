#pragma once

// CSV and JSON serialisation of every result type. CSV: header row, comma
// separated, LF line endings, reals with 12 significant digits, empty field
// for an absent value.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "rfsum/mean_values.hpp"
#include "rfsum/ramanujan.hpp"
#include "rfsum/rf_series.hpp"
#include "rfsum/singular.hpp"

namespace rfsum {

// Library version string, e.g. "0.1.0".
std::string_view library_version();

std::string format_real(double value);

// 64-bit FNV-1a, used for output checksums in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

void write_mean_csv_header(std::ostream& out);
// One row per trace checkpoint (kind "trace") and a final row (kind "final").
void write_mean_csv(std::ostream& out, const MeanValueReport& report);

void write_constant_csv_header(std::ostream& out);
void write_constant_csv(std::ostream& out, const SingularConstant& constant);

// Columns x,z,Q,value,target,gap.
void write_abel_csv(std::ostream& out, const AbelTrace& trace);

void write_rf_csv_header(std::ostream& out);
void write_rf_csv(std::ostream& out, const RfExpansion& expansion);

void write_property_csv(std::ostream& out, const PropertyReport& report);

// JSON documents (UTF-8, compact) with the same fields.
std::string to_json(const MeanValueReport& report);
std::string to_json(const SingularConstant& constant);
std::string to_json(const AbelTrace& trace);
std::string to_json(const RfExpansion& expansion);
std::string to_json(const PropertyReport& report);

}  // namespace rfsum
