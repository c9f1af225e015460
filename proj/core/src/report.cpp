#include "rfsum/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace rfsum {

using nlohmann::json;

std::string_view library_version() { return RFSUM_VERSION; }

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

// JSON has no infinities; non-finite reals become strings.
json real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

json real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

}  // namespace

void write_mean_csv_header(std::ostream& out) {
  out << "label,kind,N,empirical,predicted,abs_gap,rel_gap,exact_period_mean\n";
}

void write_mean_csv(std::ostream& out, const MeanValueReport& r) {
  for (const auto& [n, mean] : r.trace) {
    std::optional<double> abs_gap, rel_gap;
    if (r.predicted) {
      abs_gap = std::fabs(mean - *r.predicted);
      if (*r.predicted != 0.0) rel_gap = *abs_gap / std::fabs(*r.predicted);
    }
    out << r.label << ",trace," << n << ',' << format_real(mean) << ',' << opt(r.predicted)
        << ',' << opt(abs_gap) << ',' << opt(rel_gap) << ",\n";
  }
  out << r.label << ",final," << r.N << ',' << format_real(r.empirical) << ','
      << opt(r.predicted) << ',' << opt(r.abs_gap) << ',' << opt(r.rel_gap) << ','
      << (r.exact_period_mean ? to_string(*r.exact_period_mean) : std::string()) << '\n';
}

void write_constant_csv_header(std::ostream& out) {
  out << "form,parameters,value,truncation_prime,tail_estimate\n";
}

void write_constant_csv(std::ostream& out, const SingularConstant& c) {
  out << to_string(c.form) << ",\"" << c.parameters << "\"," << format_real(c.value) << ','
      << c.truncation_prime << ',' << format_real(c.tail_estimate) << '\n';
}

void write_abel_csv(std::ostream& out, const AbelTrace& t) {
  out << "x,z,Q,value,target,gap\n";
  for (const auto& step : t.ladder) {
    out << format_real(t.x) << ',' << format_real(step.z) << ',' << step.Q << ','
        << format_real(step.value) << ',' << opt(t.target) << ','
        << (t.target ? format_real(std::fabs(step.value - *t.target)) : std::string()) << '\n';
  }
}

void write_rf_csv_header(std::ostream& out) {
  out << "function,argument,Q,value,target,gap,secondary_target,tail_bound\n";
}

void write_rf_csv(std::ostream& out, const RfExpansion& e) {
  for (const auto& [q, value] : e.trace) {
    out << e.function << ',' << e.argument << ',' << q << ',' << format_real(value) << ','
        << format_real(e.target) << ',' << format_real(std::fabs(value - e.target)) << ','
        << opt(e.secondary_target) << ',' << (q == e.Q ? opt(e.tail_bound) : std::string())
        << '\n';
  }
}

void write_property_csv(std::ostream& out, const PropertyReport& r) {
  out << "id,statement,domain,cases,failures,passed,witness\n";
  for (const auto& c : r.checks) {
    out << c.id << ",\"" << c.statement << "\",\"" << c.domain << "\"," << c.cases << ','
        << c.failures << ',' << (c.passed() ? "true" : "false") << ",\"" << c.witness << "\"\n";
  }
}

std::string to_json(const MeanValueReport& r) {
  json trace = json::array();
  for (const auto& [n, mean] : r.trace) trace.push_back({n, real(mean)});
  json j = {{"label", r.label},
            {"N", r.N},
            {"empirical", real(r.empirical)},
            {"predicted", real(r.predicted)},
            {"abs_gap", real(r.abs_gap)},
            {"rel_gap", real(r.rel_gap)},
            {"trace", trace}};
  if (r.exact_period_mean) {
    j["exact_period_mean"] = {{"num", r.exact_period_mean->num},
                              {"den", r.exact_period_mean->den}};
  }
  if (r.remainder_bound) j["remainder_bound"] = real(*r.remainder_bound);
  return j.dump();
}

std::string to_json(const SingularConstant& c) {
  return json{{"form", to_string(c.form)},
              {"parameters", c.parameters},
              {"value", real(c.value)},
              {"truncation_prime", c.truncation_prime},
              {"tail_estimate", real(c.tail_estimate)}}
      .dump();
}

std::string to_json(const AbelTrace& t) {
  json ladder = json::array();
  for (const auto& s : t.ladder) {
    ladder.push_back({{"z", s.z}, {"Q", s.Q}, {"value", real(s.value)}, {"tail", real(s.tail)}});
  }
  return json{{"x", t.x}, {"epsilon", t.epsilon}, {"ladder", ladder}, {"target", real(t.target)}}
      .dump();
}

std::string to_json(const RfExpansion& e) {
  json trace = json::array();
  for (const auto& [q, v] : e.trace) trace.push_back({q, real(v)});
  return json{{"function", e.function},
              {"argument", e.argument},
              {"Q", e.Q},
              {"value", real(e.value)},
              {"target", real(e.target)},
              {"secondary_target", real(e.secondary_target)},
              {"tail_bound", real(e.tail_bound)},
              {"trace", trace}}
      .dump();
}

std::string to_json(const PropertyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"id", c.id},
                      {"statement", c.statement},
                      {"domain", c.domain},
                      {"cases", c.cases},
                      {"failures", c.failures},
                      {"passed", c.passed()},
                      {"witness", c.witness}});
  }
  return json{{"q_max", r.q_max},
              {"n_max", r.n_max},
              {"all_passed", r.all_passed()},
              {"checks", checks},
              {"notes", r.notes}}
      .dump();
}

}  // namespace rfsum
