#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "ipstele/errors.hpp"
#include "ipstele/numfmt.hpp"
#include "ipstele/sweep.hpp"

using namespace ipstele;

TEST(NumberFormat, Cases) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(0.75), "0.75");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5), "-2.5");
  EXPECT_EQ(format_number(1.0 / 56.0), "0.0178571428571");
  EXPECT_EQ(format_number(1e-8), "1e-08");
  EXPECT_EQ(format_number(2.5e7), "2.5e+07");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(2.0 / 3.0, 4), "0.6667");
}

TEST(Grid, ListAndRange) {
  EXPECT_EQ(parse_grid("0.1,0.3,0.5"), (std::vector<double>{0.1, 0.3, 0.5}));
  const auto r = parse_grid("0.1:0.5:0.1");
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r[2], 0.3);
  EXPECT_DOUBLE_EQ(r.back(), 0.5);
  EXPECT_THROW(parse_grid("0.1:0.5:0"), DomainError);
  EXPECT_THROW(parse_grid("abc"), DomainError);
}

TEST(Quantities, NamesRoundTrip) {
  EXPECT_EQ(parse_quantity("avg-fidelity"), SweepQuantity::avg_fidelity);
  EXPECT_EQ(parse_quantity("avg_fidelity"), SweepQuantity::avg_fidelity);
  EXPECT_FALSE(parse_quantity("bogus").has_value());
  EXPECT_EQ(*parse_quantity(quantity_name(SweepQuantity::delta_ab)), SweepQuantity::delta_ab);
}

TEST(Presets, Grids) {
  const SweepSpec f2 = preset_spec("fig2");
  EXPECT_EQ(f2.x.size(), 99u);
  EXPECT_DOUBLE_EQ(f2.x.front(), 0.01);
  EXPECT_DOUBLE_EQ(f2.x.back(), 0.99);
  EXPECT_EQ(f2.tau_eff.size(), 4u);
  EXPECT_DOUBLE_EQ(preset_spec("fig5").tau_eff.back(), 0.999);
  EXPECT_EQ(preset_names().size(), 4u);
  EXPECT_THROW(preset_spec("fig9"), DomainError);
}

TEST(Presets, ClickProbabilityVanishesWithoutReflection) {
  const SweepResult r = run_sweep(preset_spec("fig2"));
  ASSERT_EQ(r.columns.back(), "p11_t1");
  for (const auto& row : r.rows) EXPECT_EQ(row.back(), 0.0);
  EXPECT_EQ(r.rows.size(), 99u);
}

TEST(Presets, FidelityColumnsAboveHalf) {
  const SweepResult r = run_sweep(preset_spec("fig4"));
  for (const auto& row : r.rows) {
    for (std::size_t j = 1; j < row.size(); ++j) EXPECT_GT(row[j], 0.5) << r.columns[j];
  }
}

TEST(Csv, DeterministicAcrossThreadCounts) {
  SweepSpec s;
  s.quantity = SweepQuantity::avg_fidelity;
  s.x = {0.2, 0.4};
  s.tau_eff = {0.8, 0.9};
  s.numeric = true;
  s.quad_radial = 16;
  s.quad_angular = 24;
  s.jobs = 1;
  std::ostringstream a, b;
  run_sweep(s).write_csv(a);
  s.jobs = 4;
  run_sweep(s).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("# columns:"), std::string::npos);
  EXPECT_NE(a.str().find("# max_abs_dev"), std::string::npos);
}

TEST(Csv, NumericColumnsPassChecks) {
  SweepSpec s;
  s.quantity = SweepQuantity::p11;
  s.x = {0.3, 0.5};
  s.tau = {0.7, 0.9};
  s.eta = {0.5, 1.0};
  s.numeric = true;
  const SweepResult r = run_sweep(s);
  EXPECT_EQ(r.rows.size(), 8u);
  EXPECT_TRUE(r.all_pass());
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_LT(r.checks[0].max_abs_dev, 1e-8);
}

TEST(Json, RowsAndNullForNan) {
  SweepSpec s;
  s.quantity = SweepQuantity::x_th;
  s.tau_eff = {0.4, 0.9};
  std::ostringstream out;
  const SweepResult r = run_sweep(s);
  r.write_json(out);
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_TRUE(j.contains("rows"));
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j["rows"][0]["x_th"].is_null());
  EXPECT_NEAR(j["rows"][1]["x_th"].get<double>(), 0.708054939813, 1e-11);
}

TEST(SpecValidation, RejectsBadInput) {
  SweepSpec s;
  s.quantity = SweepQuantity::p11;
  s.x = {1.2};
  s.tau_eff = {0.9};
  EXPECT_THROW(s.validate(), DomainError);
  s.x = {0.5};
  s.tau_eff = {0.9};
  s.tau = {0.9};
  s.eta = {1.0};
  EXPECT_THROW(s.validate(), DomainError);
}
