#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bkm/bkm.hpp"

namespace {

using namespace bkm;

struct RunConfig {
  int p_trunc = 6;
  int q_trunc = 6;
  int series_trunc = 40;
  double tolerance = 1e-8;
  std::string format = "text";
  bool no_timings = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used == std::string(v).size()) return x;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("environment variable ") + name + " is not an integer");
}

class Runner {
public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  template <class F>
  void run(F&& produce) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Report> rs = produce();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : rs) {
      r.timings_ms = cfg_.no_timings ? 0.0 : ms / static_cast<double>(rs.size());
      std::cout << emit_report(r, cfg_.format == "json" ? Format::json : Format::text);
      if (cfg_.format != "json" && &r != &rs.back()) std::cout << "\n";
      all_pass_ = all_pass_ && r.equal;
    }
  }

  bool all_pass() const { return all_pass_; }

private:
  const RunConfig& cfg_;
  bool all_pass_ = true;
};

void check_truncations(const RunConfig& cfg) {
  if (cfg.p_trunc < 1 || cfg.q_trunc < 1 || cfg.series_trunc < 1) throw UsageError("truncations must be >= 1");
  if (!(cfg.tolerance > 0)) throw UsageError("tolerance must be positive");
}

km::Gcm load_gcm(const std::string& path) {
  km::Gcm g = io::parse_gcm(io::read_file(path));
  const km::ValidationReport v = km::validate(g);
  if (!v.valid(g.kind())) {
    std::string msg = "invalid Cartan matrix:";
    for (const auto& f : v.failures) msg += " " + f + ";";
    throw io::DataError(msg);
  }
  return g;
}

std::vector<long> parse_labels(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("bad weight label '" + part + "'");
    }
  }
  return out;
}

std::pair<double, double> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("point must be SIGMA_IM,TAU_IM");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("bad point '" + text + "'");
  }
}

Report solve_report(const ThompsonData& data, int known, int target, bool compare_with_j) {
  const SolveResult s = solve_coefficients(data, known, target);
  Report r;
  r.name = "moonshine-solve:" + data.label;
  r.params = {{"known", known}, {"target", target}};
  r.equal = s.underdetermined.empty();
  for (const auto& [k, v] : s.determined) r.details["c(" + std::to_string(k) + ")"] = v.get_str();
  std::string under;
  for (int k : s.underdetermined) under += (under.empty() ? "" : " ") + std::to_string(k);
  r.details["underdetermined"] = under.empty() ? "none" : under;
  r.details["iterations"] = s.iterations;
  if (compare_with_j) {
    const QSeries j = j_minus_744(target);
    for (const auto& [k, v] : s.determined) {
      if (v != j.coeff(k)) {
        r.equal = false;
        r.first_discrepancy = {{"q_deg", k}, {"solved", v.get_str()}, {"expected", j.coeff(k).get_str()}};
        break;
      }
    }
    r.notes.push_back("determined values compared with the j expansion");
  }
  if (!s.underdetermined.empty() && r.first_discrepancy.is_null()) {
    r.first_discrepancy = {{"q_deg", s.underdetermined.front()}, {"status", "underdetermined"}};
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg.p_trunc = env_int("BKM_P_TRUNC", cfg.p_trunc);
    cfg.q_trunc = env_int("BKM_Q_TRUNC", cfg.q_trunc);
    cfg.series_trunc = env_int("BKM_SERIES_TRUNC", cfg.series_trunc);
    if (const char* nt = std::getenv("BKM_NO_TIMINGS")) cfg.no_timings = std::string(nt) == "1";
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Exact verification of Borcherds-type product identities"};
  app.name("bkm");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p-trunc", cfg.p_trunc, "p-degree truncation");
  app.add_option("--q-trunc", cfg.q_trunc, "q-degree truncation");
  app.add_option("--trunc", cfg.series_trunc, "series truncation");
  app.add_option("--tolerance", cfg.tolerance, "numerical tolerance");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timings", cfg.no_timings, "report timings_ms as 0");

  Runner runner(cfg);
  std::function<void()> action;

  auto* verify = app.add_subcommand("verify", "verify an identity")->require_subcommand(1)->fallthrough();
  verify->add_subcommand("mid", "j(p) - j(q) product formula")->callback([&] {
    action = [&] { runner.run([&] { return std::vector{to_report(verify_mid(cfg.p_trunc, cfg.q_trunc))}; }); };
  });
  verify->add_subcommand("fmid", "fake monster denominator formula")->callback([&] {
    action = [&] { runner.run([&] { return std::vector{to_report(verify_fmid(cfg.p_trunc, cfg.q_trunc))}; }); };
  });
  verify->add_subcommand("j-product", "product expansion of j")->callback([&] {
    action = [&] {
      runner.run([&] {
        const JProductReport jp = verify_j_product(cfg.series_trunc);
        Report r = to_report(jp.report);
        r.params = {{"trunc", cfg.series_trunc}};
        std::string ex;
        for (int n = 1; n <= cfg.series_trunc; ++n) {
          auto it = jp.exponents.find(n);
          ex += (n > 1 ? " " : "") + (it == jp.exponents.end() ? std::string("0") : it->second.get_str());
        }
        r.details["exponents"] = ex;
        return std::vector{r};
      });
    };
  });
  std::string twisted_data;
  std::string twisted_class;
  auto* twisted = verify->add_subcommand("twisted", "twisted denominator relation");
  auto* data_opt = twisted->add_option("--data", twisted_data, "Thompson data file");
  twisted->add_option("--class", twisted_class, "built-in class (1A)")->excludes(data_opt);
  twisted->callback([&] {
    action = [&] {
      runner.run([&] {
        ThompsonData d;
        if (!twisted_data.empty()) {
          d = io::parse_thompson(io::read_file(twisted_data));
        } else {
          if (!twisted_class.empty() && twisted_class != "1A") {
            throw UsageError("no built-in data for class " + twisted_class + "; use --data");
          }
          d = identity_element_data(std::max(product_degree_bound(cfg.p_trunc, cfg.q_trunc), 1));
        }
        return std::vector{to_report(verify_twisted(d, cfg.p_trunc, cfg.q_trunc))};
      });
    };
  });
  std::vector<std::string> points;
  auto* phi = verify->add_subcommand("phi", "functional equation and periodicity of Phi");
  phi->add_option("--point,--points", points, "imaginary parts SIGMA,TAU (repeatable)");
  phi->callback([&] {
    action = [&] {
      runner.run([&] {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : points) pts.push_back(parse_point(p));
        if (pts.empty()) pts = {{2.0, 3.0}, {1.0, std::sqrt(2.0)}};
        const autoforms::PhiEvaluator ev(cfg.series_trunc);
        std::vector<Report> out;
        for (const auto& [s, t] : pts) {
          if (!(s > 0) || !(t > 0)) throw UsageError("imaginary parts must be positive");
          const autoforms::SlicePoint pt({0, s}, {0, t});
          out.push_back(to_report(autoforms::check_functional_equation(ev, pt, cfg.tolerance), pt, cfg.tolerance));
          out.push_back(to_report(autoforms::check_periodicity(ev, pt, cfg.tolerance), pt, cfg.tolerance));
        }
        return out;
      });
    };
  });

  unsigned seed = 1;
  auto* lattice = app.add_subcommand("lattice", "Lorentzian lattice checks")->require_subcommand(1)->fallthrough();
  auto* lcheck = lattice->add_subcommand("check", "randomised lattice consistency checks");
  lcheck->add_option("--seed", seed, "random seed");
  lcheck->callback([&] {
    action = [&] {
      runner.run([&] {
        const lorentz::LatticeCheck c = lorentz::lattice_self_check(seed);
        Report r;
        r.name = "lattice";
        r.params = {{"seed", seed}};
        r.equal = c.pass();
        r.details = {{"rho_norm_zero", c.rho_null},
                     {"membership_checks", c.membership_checks},
                     {"reflection_checks", c.reflection_checks},
                     {"leech_classes", c.leech_classes},
                     {"min_class_difference_norm", c.min_class_distance.get_str()}};
        if (!c.pass()) r.first_discrepancy = {{"failure", c.failures.front()}};
        return std::vector{r};
      });
    };
  });

  std::string gcm_path;
  int cutoff = 12;
  std::string weight;
  auto* km_cmd = app.add_subcommand("km", "Kac-Moody computations")->require_subcommand(1)->fallthrough();
  auto* den = km_cmd->add_subcommand("denominator", "Weyl-Kac denominator identity");
  den->add_option("--gcm", gcm_path, "Cartan matrix file")->required();
  den->add_option("--cutoff", cutoff, "root height cutoff");
  den->callback([&] {
    action = [&] {
      runner.run([&] {
        const km::Gcm g = load_gcm(gcm_path);
        return std::vector{to_report(km::denominator_check(g, cutoff), "km-denominator")};
      });
    };
  });
  auto* chr = km_cmd->add_subcommand("character", "irreducible character and dimension");
  chr->add_option("--gcm", gcm_path, "Cartan matrix file")->required();
  chr->add_option("--weight", weight, "Dynkin labels n1,n2,...")->required();
  chr->callback([&] {
    action = [&] {
      runner.run([&] {
        const km::Gcm g = load_gcm(gcm_path);
        const std::vector<long> labels = parse_labels(weight);
        const km::GroupRingElement ch = km::character(g, labels, Rational(1000000));
        const Integer dim = to_integer(ch.coefficient_sum(), "dimension");
        const Integer fr = km::freudenthal_dimension(g, labels);
        Report r;
        r.name = "km-character";
        r.params = {{"weight", weight}};
        r.equal = dim == fr;
        r.details = {{"dimension", dim.get_str()}, {"freudenthal_dimension", fr.get_str()}, {"weights", ch.size()}};
        if (!r.equal) r.first_discrepancy = {{"dimension", dim.get_str()}, {"freudenthal", fr.get_str()}};
        return std::vector{r};
      });
    };
  });

  int known = 5;
  int target = 10;
  std::string solve_data;
  auto* moon = app.add_subcommand("moonshine", "moonshine relations")->require_subcommand(1)->fallthrough();
  auto* solve = moon->add_subcommand("solve", "recover Thompson coefficients");
  solve->add_option("--known", known, "coefficients known through q^K");
  solve->add_option("--target", target, "solve through q^T");
  solve->add_option("--data", solve_data, "Thompson data file (default: class 1A)");
  solve->callback([&] {
    action = [&] {
      runner.run([&] {
        if (known < -1 || target < known) throw UsageError("need -1 <= known <= target");
        if (solve_data.empty()) return std::vector{solve_report(identity_element_data(std::max(known, 1)), known, target, true)};
        return std::vector{solve_report(io::parse_thompson(io::read_file(solve_data)), known, target, false)};
      });
    };
  });

  auto* mf = app.add_subcommand("modforms", "modular form tables")->require_subcommand(1)->fallthrough();
  mf->add_subcommand("table", "coefficients of j and 1/Delta")->callback([&] {
    action = [&] {
      runner.run([&] {
        const ModformTable t(cfg.series_trunc);
        Report r;
        r.name = "modforms-table";
        r.params = {{"trunc", cfg.series_trunc}};
        r.equal = true;
        for (int n = -1; n <= cfg.series_trunc; ++n) r.details["c(" + std::to_string(n) + ")"] = t.c(n).get_str();
        for (int n = 0; n <= cfg.series_trunc + 1; ++n) {
          r.details["p24(" + std::to_string(n) + ")"] = t.p24(n).get_str();
        }
        return std::vector{r};
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    check_truncations(cfg);
    if (action) action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientDataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const km::NotImplementedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return runner.all_pass() ? 0 : 1;
}
