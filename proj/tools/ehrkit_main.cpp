// ehrkit — exact lattice-point counts, Ehrhart quasi-polynomials, and period
// queries for rational polytopes given by an H-representation in JSON.
//
// Exit codes: 0 success, 1 internal error, 2 input error, 3 oracle mismatch.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ehrkit/barvinok.hpp"
#include "ehrkit/ehrhart.hpp"
#include "ehrkit/oracle.hpp"
#include "ehrkit/polytope.hpp"
#include "ehrkit/rational.hpp"
#include "ehrkit/rgf.hpp"

namespace {

using namespace ehrkit;

// Raised when --oracle disagrees with the pipeline; mapped to exit code 3.
struct OracleMismatch {
  std::string detail;
};

nlohmann::json json_of_int(const Int& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

Int int_arg(const std::string& text, const char* what) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string("invalid ") + what + ": '" + text + "'");
  }
}

polytope::Polytope load_polytope(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return polytope::parse(text);
}

// "1 + t + 1/4*t^2", omitting zero terms; "0" if everything vanishes.
std::string poly_text(const std::vector<Rat>& coef) {
  std::string out;
  for (size_t k = 0; k < coef.size(); ++k) {
    if (coef[k] == 0) continue;
    Rat a = coef[k];
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    if (a < 0) a = Rat(-a);
    std::string mag = rat_to_string(a);
    if (k == 0) {
      out += mag;
    } else {
      if (mag != "1") {
        out += mag;
        out += "*";
      }
      out += "t";
      if (k >= 2) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

bool rotation_fixes(const ehrhart::QuasiPolynomial& q, const Int& n) {
  Int r = n % q.period;
  if (r == 0) return true;
  long shift = r.get_si();
  long den = q.period.get_si();
  for (long i = 0; i < den; ++i) {
    if (q.constituents[(size_t)i] != q.constituents[(size_t)((i + shift) % den)]) return false;
  }
  return true;
}

// Lattice bounding box of P from its vertices; nullopt when P has no vertices
// or the box contains no integer points.
std::optional<std::pair<IntVec, IntVec>> lattice_box(const polytope::Polytope& p) {
  auto vs = polytope::vertices(p);
  if (vs.vertices.empty()) return std::nullopt;
  size_t d = p.dim;
  IntVec lo(d), hi(d);
  for (size_t j = 0; j < d; ++j) {
    Rat mn = vs.vertices[0][j];
    Rat mx = mn;
    for (const auto& v : vs.vertices) {
      if (v[j] < mn) mn = v[j];
      if (v[j] > mx) mx = v[j];
    }
    lo[j] = ceil_rat(mn);
    hi[j] = floor_rat(mx);
    if (lo[j] > hi[j]) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

// Checks that the dense expansion of f on [lo, hi] is exactly the 0/1
// indicator of the oracle's lattice-point enumeration.
void check_indicator(const rgf::ShortRGF& f, const polytope::Polytope& p, const IntVec& lo,
                     const IntVec& hi) {
  auto dense = oracle::expand_dense(f, lo, hi);
  auto pts = oracle::enumerate(p);
  std::map<IntVec, Rat> expected;
  for (const auto& pt : pts) {
    bool inside = true;
    for (size_t j = 0; j < pt.size(); ++j) {
      if (pt[j] < lo[j] || pt[j] > hi[j]) {
        inside = false;
        break;
      }
    }
    if (inside) expected[pt] = Rat(1);
  }
  if (dense.coefficients != expected) {
    throw OracleMismatch{"generating function does not expand to the lattice-point indicator"};
  }
}

void emit(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

int run_count(const std::string& input, const std::string& t_text, bool use_oracle,
              bool as_json) {
  Int t = int_arg(t_text, "--t");
  auto p = load_polytope(input);
  Int n = ehrhart::count(p, t);
  if (use_oracle) {
    Int brute((long)oracle::enumerate(polytope::dilate(p, t)).size());
    if (brute != n) {
      throw OracleMismatch{"count " + n.get_str() + " vs enumerated " + brute.get_str()};
    }
  }
  if (as_json) {
    emit({{"count", json_of_int(n)}, {"t", json_of_int(t)}});
  } else {
    std::cout << n.get_str() << "\n";
  }
  return 0;
}

int run_quasipoly(const std::string& input, bool use_oracle, bool as_json) {
  auto p = load_polytope(input);
  auto q = ehrhart::quasipolynomial(p);
  if (use_oracle) {
    auto brute = oracle::brute_quasipolynomial(p);
    if (brute.period != q.period || brute.constituents != q.constituents) {
      throw OracleMismatch{"quasi-polynomial differs from per-residue interpolation"};
    }
  }
  if (as_json) {
    std::cout << ehrhart::to_json(q) << "\n";
  } else {
    std::cout << "period " << q.period.get_str() << "\n";
    for (size_t i = 0; i < q.constituents.size(); ++i) {
      std::cout << "f_" << i << "(t) = " << poly_text(q.constituents[i]) << "\n";
    }
  }
  return 0;
}

int run_period(const std::string& input, const std::string& n_text, bool use_oracle,
               bool as_json) {
  Int n = int_arg(n_text, "--n");
  auto p = load_polytope(input);
  bool yes = ehrhart::is_period(p, n);
  if (use_oracle) {
    bool brute = rotation_fixes(oracle::brute_quasipolynomial(p), n);
    if (brute != yes) {
      throw OracleMismatch{std::string("period test says ") + (yes ? "yes" : "no") +
                           ", constituent rotation says " + (brute ? "yes" : "no")};
    }
  }
  if (as_json) {
    emit({{"n", json_of_int(n)}, {"period", yes}});
  } else {
    std::cout << (yes ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_min_period(const std::string& input, bool use_oracle, bool as_json) {
  auto p = load_polytope(input);
  Int m = ehrhart::min_period(p);
  if (use_oracle) {
    Int brute = oracle::brute_min_period(oracle::brute_quasipolynomial(p));
    if (brute != m) {
      throw OracleMismatch{"min period " + m.get_str() + " vs brute " + brute.get_str()};
    }
  }
  if (as_json) {
    emit({{"min_period", json_of_int(m)}});
  } else {
    std::cout << m.get_str() << "\n";
  }
  return 0;
}

int run_denominator(const std::string& input, bool use_oracle, bool as_json) {
  auto p = load_polytope(input);
  Int den = polytope::denominator(p);
  if (use_oracle) {
    Int brute = oracle::brute_quasipolynomial(p).period;
    if (brute != den) {
      throw OracleMismatch{"denominator " + den.get_str() + " vs brute " + brute.get_str()};
    }
  }
  if (as_json) {
    emit({{"denominator", json_of_int(den)}});
  } else {
    std::cout << den.get_str() << "\n";
  }
  return 0;
}

int run_dump_gf(const std::string& input, const std::vector<long>& window, bool use_oracle) {
  auto p = load_polytope(input);
  auto f = barvinok::polytope_rgf(p);

  std::optional<std::pair<IntVec, IntVec>> box;
  if (!window.empty()) {
    if (window[0] > window[1]) throw std::invalid_argument("--window needs LO <= HI");
    box = std::make_pair(IntVec(p.dim, Int(window[0])), IntVec(p.dim, Int(window[1])));
  }

  if (use_oracle) {
    auto check_box = box ? box : lattice_box(p);
    if (check_box) {
      check_indicator(f, p, check_box->first, check_box->second);
    } else if (!oracle::enumerate(p).empty()) {
      throw OracleMismatch{"no lattice bounding box but the enumeration is nonempty"};
    }
  }

  if (box) {
    auto dense = oracle::expand_dense(f, box->first, box->second);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [e, c] : dense.coefficients) {
      nlohmann::json exp = nlohmann::json::array();
      for (const auto& ei : e) exp.push_back(json_of_int(ei));
      coeffs.push_back({{"c", rat_to_string(c)}, {"e", exp}});
    }
    emit({{"coefficients", coeffs},
          {"window", {{"hi", window[1]}, {"lo", window[0]}}}});
  } else {
    std::cout << rgf::to_json(f) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Ehrhart quasi-polynomials of rational polytopes"};
  app.require_subcommand(1);

  std::string input;
  std::string t_text, n_text;
  std::string gen_d, gen_s;
  std::vector<long> window;
  bool use_oracle = false;
  bool as_json = false;

  auto common = [&](CLI::App* cmd, bool dense_output) {
    cmd->add_option("input", input, "H-representation JSON file ('-' or omitted: stdin)");
    cmd->add_flag("--oracle", use_oracle, "re-derive the answer by brute force; exit 3 on mismatch");
    if (dense_output) cmd->add_flag("--json", as_json, "emit JSON instead of plain text");
  };

  auto* cmd_count = app.add_subcommand("count", "lattice points in the t-th dilate");
  cmd_count->add_option("--t", t_text, "dilation factor (nonnegative integer)")->required();
  common(cmd_count, true);

  auto* cmd_quasipoly =
      app.add_subcommand("quasipoly", "full quasi-polynomial (one constituent per residue)");
  common(cmd_quasipoly, true);

  auto* cmd_period = app.add_subcommand("period", "decide whether n is a period");
  cmd_period->add_option("--n", n_text, "candidate period (positive integer)")->required();
  common(cmd_period, true);

  auto* cmd_min_period = app.add_subcommand("min-period", "minimum period");
  common(cmd_min_period, true);

  auto* cmd_denominator = app.add_subcommand("denominator", "lcm of vertex coordinate denominators");
  common(cmd_denominator, true);

  auto* cmd_dump_gf = app.add_subcommand("dump-gf", "short rational generating function as JSON");
  common(cmd_dump_gf, false);
  cmd_dump_gf->add_option("--window", window, "expand densely on the box [LO, HI]^d")
      ->type_size(2)
      ->expected(1);

  auto* cmd_gen = app.add_subcommand("gen", "emit a named instance as H-representation JSON");
  cmd_gen->require_subcommand(1);
  auto* gen_pentagon = cmd_gen->add_subcommand(
      "pentagon", "rational pentagon with denominator D and minimum period s");
  gen_pentagon->add_option("--D", gen_d, "vertex denominator (even, >= 2)")->required();
  gen_pentagon->add_option("--s", gen_s, "divisor of D controlling the period")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_count) return run_count(input, t_text, use_oracle, as_json);
    if (*cmd_quasipoly) return run_quasipoly(input, use_oracle, as_json);
    if (*cmd_period) return run_period(input, n_text, use_oracle, as_json);
    if (*cmd_min_period) return run_min_period(input, use_oracle, as_json);
    if (*cmd_denominator) return run_denominator(input, use_oracle, as_json);
    if (*cmd_dump_gf) return run_dump_gf(input, window, use_oracle);
    if (*gen_pentagon) {
      auto p = polytope::pentagon(int_arg(gen_d, "--D"), int_arg(gen_s, "--s"));
      std::cout << polytope::to_json(p) << "\n";
      return 0;
    }
    std::cerr << "ehrkit: unknown command\n";
    return 2;
  } catch (const OracleMismatch& e) {
    std::cerr << "ehrkit: oracle mismatch: " << e.detail << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ehrkit: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "ehrkit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ehrkit: " << e.what() << "\n";
    return 2;
  }
}
