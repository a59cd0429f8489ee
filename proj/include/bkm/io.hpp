#ifndef BKM_IO_HPP
#define BKM_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kacmoody.hpp"
#include "moonshine.hpp"

namespace bkm::io {

class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// One matrix row per line, entries as integers or p/q; '#' starts a comment.
/// An optional line "kind generalized" (or "kind classic") precedes the rows.
inline km::Gcm parse_gcm(const std::string& text) {
  std::istringstream in(text);
  Matrix rows;
  km::GcmKind kind = km::GcmKind::classic;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto tok = tokens(strip_comment(line));
    if (tok.empty()) continue;
    if (tok[0] == "kind") {
      if (!rows.empty() || tok.size() != 2) throw DataError("line " + std::to_string(lineno) + ": misplaced kind");
      if (tok[1] == "generalized") {
        kind = km::GcmKind::generalized;
      } else if (tok[1] != "classic") {
        throw DataError("line " + std::to_string(lineno) + ": unknown kind '" + tok[1] + "'");
      }
      continue;
    }
    Vec row;
    for (const auto& t : tok) {
      try {
        row.push_back(parse_rational(t));
      } catch (const std::invalid_argument& e) {
        throw DataError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("no matrix rows");
  try {
    return km::Gcm(std::move(rows), kind);
  } catch (const km::GcmError& e) {
    throw DataError(e.what());
  }
}

/// Header "class <label> maxpower <M>", then lines "N: a_-1 a_0 a_1 ..." of
/// integer coefficients from q^-1 upward.
inline ThompsonData parse_thompson(const std::string& text) {
  std::istringstream in(text);
  ThompsonData d;
  bool header = false;
  int lineno = 0;
  auto fail = [&](const std::string& what) { throw DataError("line " + std::to_string(lineno) + ": " + what); };
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string body = strip_comment(line);
    const auto tok = tokens(body);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 4 || tok[0] != "class" || tok[2] != "maxpower") fail("expected 'class <label> maxpower <M>'");
      d.label = tok[1];
      try {
        d.max_power = std::stoi(tok[3]);
      } catch (const std::exception&) {
        fail("bad maxpower '" + tok[3] + "'");
      }
      if (d.max_power < 1) fail("maxpower must be positive");
      header = true;
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string::npos) fail("expected 'N: coefficients'");
    const auto head = tokens(body.substr(0, colon));
    const auto coeffs = tokens(body.substr(colon + 1));
    int N = 0;
    try {
      if (head.size() != 1) throw std::invalid_argument("power");
      std::size_t used = 0;
      N = std::stoi(head[0], &used);
      if (used != head[0].size()) throw std::invalid_argument("power");
    } catch (const std::exception&) {
      fail("bad power index");
    }
    if (N < 1 || N > d.max_power) fail("power " + std::to_string(N) + " outside 1..maxpower");
    if (d.power_series.count(N)) fail("duplicate power " + std::to_string(N));
    if (coeffs.empty()) fail("no coefficients for power " + std::to_string(N));
    QSeries s(-1, static_cast<int>(coeffs.size()) - 2);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Integer v;
      if (v.set_str(coeffs[i], 10) != 0) fail("coefficient '" + coeffs[i] + "' is not an integer");
      s.set(static_cast<int>(i) - 1, Rational(v));
    }
    if (s.coeff(-1) != 1) fail("series for power " + std::to_string(N) + " must start with q^-1 coefficient 1");
    d.power_series.emplace(N, std::move(s));
  }
  if (!header) throw DataError("missing class header");
  if (!d.power_series.count(1)) throw DataError("series for power 1 is required");
  return d;
}

/// Inverse of parse_thompson for the stored powers, each through q^trunc.
inline std::string format_thompson(const ThompsonData& d, int max_power, int trunc) {
  std::ostringstream out;
  out << "class " << d.label << " maxpower " << max_power << "\n";
  for (int N = 1; N <= max_power; ++N) {
    const QSeries& s = d.series(N);
    out << N << ":";
    for (int k = -1; k <= trunc; ++k) out << " " << (k < s.min_deg() ? Rational(0) : s.coeff(k)).get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace bkm::io

#endif  // BKM_IO_HPP
