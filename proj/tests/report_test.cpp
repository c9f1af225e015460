#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "rfsum/report.hpp"

namespace {

using namespace rfsum;

TEST(Report, FormatReal) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_real(std::nan("")), "nan");
}

TEST(Report, Fnv) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(Report, MeanCsvRows) {
  MeanValueReport r;
  r.label = "pnt:lambda1";
  r.N = 20;
  r.trace = {{10, 0.5}, {20, 0.75}};
  r.empirical = 0.75;
  r.set_predicted(1.0);
  std::ostringstream out;
  write_mean_csv_header(out);
  write_mean_csv(out, r);
  EXPECT_EQ(out.str(),
            "label,kind,N,empirical,predicted,abs_gap,rel_gap,exact_period_mean\n"
            "pnt:lambda1,trace,10,0.5,1,0.5,0.5,\n"
            "pnt:lambda1,trace,20,0.75,1,0.25,0.25,\n"
            "pnt:lambda1,final,20,0.75,1,0.25,0.25,\n");
}

TEST(Report, JsonIsParseable) {
  SingularConstant c;
  c.value = 1.5;
  c.tail_estimate = std::numeric_limits<double>::infinity();
  c.form = ConstantForm::series;
  c.parameters = "h=2";
  const auto j = nlohmann::json::parse(to_json(c));
  EXPECT_EQ(j.at("form"), "series");
  EXPECT_EQ(j.at("tail_estimate"), "inf");
  EXPECT_EQ(j.at("value"), 1.5);
}

TEST(Report, SetPredictedZeroHasNoRelativeGap) {
  MeanValueReport r;
  r.empirical = 0.25;
  r.set_predicted(0.0);
  EXPECT_EQ(*r.abs_gap, 0.25);
  EXPECT_FALSE(r.rel_gap);
}

}  // namespace
