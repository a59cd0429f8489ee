#include <gtest/gtest.h>

#include "bkm/io.hpp"
#include "bkm/report.hpp"

using namespace bkm;

TEST(ParseGcm, RowsCommentsAndKind) {
  const km::Gcm g = io::parse_gcm("# B2\n4 -2\n-2 2  # second row\n");
  EXPECT_EQ(g.rank(), 2u);
  EXPECT_EQ(g(0, 1), -2);
  EXPECT_EQ(g.kind(), km::GcmKind::classic);
  const km::Gcm h = io::parse_gcm("kind generalized\n0 -1/2\n-1/2 2\n");
  EXPECT_EQ(h.kind(), km::GcmKind::generalized);
  EXPECT_EQ(h(0, 1), Rational(-1, 2));
}

TEST(ParseGcm, Errors) {
  EXPECT_THROW(io::parse_gcm(""), io::DataError);
  EXPECT_THROW(io::parse_gcm("2 x\n"), io::DataError);
  EXPECT_THROW(io::parse_gcm("2 -1\n-2 2\n"), io::DataError);
  EXPECT_THROW(io::parse_gcm("2 -1\n"), io::DataError);
  EXPECT_THROW(io::parse_gcm("2\nkind generalized\n"), io::DataError);
  EXPECT_THROW(io::parse_gcm("kind odd\n2\n"), io::DataError);
  EXPECT_THROW(io::parse_gcm("1/0\n"), io::DataError);
}

TEST(ParseGcm, BundledFiles) {
  for (const char* name : {"a1.txt", "a2.txt", "b2.txt", "affine_a1.txt"}) {
    const km::Gcm g = io::parse_gcm(io::read_file(std::string(BKM_DATA_DIR) + "/" + name));
    EXPECT_TRUE(km::validate(g).valid_classic) << name;
  }
  EXPECT_THROW(io::read_file("/nonexistent/path.txt"), io::DataError);
}

TEST(ParseThompson, BundledIdentityClass) {
  const ThompsonData d = io::parse_thompson(io::read_file(std::string(BKM_DATA_DIR) + "/1A.txt"));
  EXPECT_EQ(d.label, "1A");
  EXPECT_EQ(d.max_power, 7);
  EXPECT_FALSE(d.identity_powers);
  EXPECT_EQ(d.series(3).coeff(2), 21493760);
  EXPECT_TRUE(verify_twisted(d, 5, 5).equal);
}

TEST(ParseThompson, RoundTrip) {
  const ThompsonData id = identity_element_data(8);
  const std::string text = io::format_thompson(id, 3, 8);
  const ThompsonData back = io::parse_thompson(text);
  EXPECT_EQ(back.max_power, 3);
  for (int N = 1; N <= 3; ++N) EXPECT_EQ(back.series(N), id.series(1));
  EXPECT_EQ(io::format_thompson(back, 3, 8), text);
}

TEST(ParseThompson, Errors) {
  EXPECT_THROW(io::parse_thompson(""), io::DataError);
  EXPECT_THROW(io::parse_thompson("klass 1A maxpower 2\n1: 1 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1: 1 0 x\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1: 1 0 1/2\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1: 1 0\n1: 1 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n3: 1 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1: 2 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n2: 1 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1 1 0\n"), io::DataError);
  EXPECT_THROW(io::parse_thompson("class 1A maxpower 2\n1:\n"), io::DataError);
}

TEST(ParseThompson, MissingPowerSurfacesAsInsufficientData) {
  const ThompsonData d = io::parse_thompson("class 2A maxpower 1\n1: 1 0 4372 96256 1240002 10698752 74428120\n");
  EXPECT_THROW(verify_twisted(d, 3, 3), InsufficientDataError);
}

TEST(Report, IdentityJsonFields) {
  Report r = to_report(verify_fmid(2, 2));
  r.timings_ms = 1.5;
  const Json j = Json::parse(emit_report(r, Format::json));
  EXPECT_EQ(j["name"], "fmid");
  EXPECT_EQ(j["equal"], true);
  EXPECT_TRUE(j["first_discrepancy"].is_null());
  EXPECT_GE(j["timings_ms"].get<double>(), 0);
  EXPECT_EQ(j["params"]["p_trunc"], 2);
  const std::string dump = emit_report(r, Format::json);
  EXPECT_NE(dump.find("\"name\":\"fmid\",\"params\""), std::string::npos);
  EXPECT_NE(dump.find("\"equal\":true"), std::string::npos);
}

TEST(Report, FailingReportCarriesDiscrepancy) {
  const Report r = to_report(verify_mid(3, 3, ExponentMutation{1, 1, 1}));
  const Json j = Json::parse(emit_report(r, Format::json));
  EXPECT_EQ(j["equal"], false);
  EXPECT_EQ(j["first_discrepancy"]["p_deg"], 0);
  EXPECT_EQ(j["first_discrepancy"]["q_deg"], 1);
  const std::string text = emit_report(r, Format::text);
  EXPECT_NE(text.find("equal: false"), std::string::npos);
  EXPECT_NE(text.find("first_discrepancy: p_deg=0 q_deg=1"), std::string::npos);
}

TEST(Report, TextIsDeterministic) {
  const Report a = to_report(km::denominator_check(km::Gcm::from_ints({{2, -1}, {-1, 2}}), 10), "km-denominator");
  const Report b = to_report(km::denominator_check(km::Gcm::from_ints({{2, -1}, {-1, 2}}), 10), "km-denominator");
  EXPECT_EQ(emit_report(a, Format::text), emit_report(b, Format::text));
  EXPECT_NE(emit_report(a, Format::text).find("weyl_terms: 6"), std::string::npos);
  EXPECT_NE(emit_report(a, Format::text).find("first_discrepancy: none"), std::string::npos);
}

TEST(Report, NumericCheck) {
  const autoforms::SlicePoint pt(autoforms::Complex(0, 2), autoforms::Complex(0, 3));
  const Report r = to_report(autoforms::check_functional_equation(pt, 40, 1e-8), pt, 1e-8);
  EXPECT_EQ(r.name, "phi:functional-equation");
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.first_discrepancy.is_null());
  EXPECT_EQ(r.params["sigma"], "0 + 2i");
}
