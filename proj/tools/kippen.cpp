// kippen: command-line front end.
//
// Exit codes: 0 property holds or run consistent, 1 refuted (with witness),
// 2 input or usage error, 3 inconclusive.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kippen/kippen.hpp"

using json = nlohmann::json;
using namespace kippen;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kHolds = 0, kRefuted = 1, kInputError = 2, kInconclusive = 3 };

struct Common {
  std::string input;
  std::string out;
  std::string format = "json";
  bool allow_float = false;
  double tol = 1e-8;
  std::size_t grid = 720;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Input {
  std::string path, digest;
  MatrixFile file;
};

Input load(const Common& o) {
  if (o.input.empty()) throw Error("--input is required");
  Input in;
  in.path = o.input;
  std::string text = slurp(o.input);
  in.digest = fnv1a64(text);
  in.file = parse_matrix_file(text);
  return in;
}

Matrix<Gaussian> exact_square(const Input& in, const Common& o) {
  if (!in.file.square()) throw Error("matrix must be square");
  return exact_gaussian(in.file, o.allow_float);
}

CMat numeric_square(const Input& in) {
  if (!in.file.square()) throw Error("matrix must be square");
  return in.file.numeric;
}

json witness_json(const std::optional<std::pair<Monomial, Gaussian>>& w) {
  if (!w) return nullptr;
  return {{"monomial", w->first.to_string()}, {"coefficient", kippen::to_string(w->second)}};
}

json contraction_json(const Contraction<Gaussian>& c) {
  return {{"n", c.n},
          {"defect_rank", c.defect_rank},
          {"contraction", kippen::to_string(c.is_contraction)},
          {"nilpotent", kippen::to_string(c.is_nilpotent)}};
}

/// Writes the report and returns `code`.
int emit(const Common& o, const std::vector<std::string>& argv, const Input* in, json result, int code, double seconds) {
  json rep;
  rep["tool"] = {{"name", "kippen"}, {"version", kVersion}};
  rep["command"] = argv;
  if (in) rep["input"] = {{"path", in->path}, {"digest", in->digest}};
  rep["result"] = std::move(result);
  rep["exit_code"] = code;
  rep["timing"] = {{"seconds", seconds}};
  std::string text = rep.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("cannot write " + o.out);
    f << text;
  }
  return code;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------

int cmd_check(const Common& o, const std::string& mode, int max_word_len, double delta, double theta1, double theta2,
              const std::vector<std::string>& argv) {
  Clock clock;
  Input in = load(o);
  json r;
  r["mode"] = mode;
  int code = kHolds;
  if (mode == "rotinv-probe") {
    CMat C = numeric_square(in);
    ProbeOptions opt;
    opt.tol = o.tol;
    auto rep = rotinv_probe(C, delta, theta1, theta2, opt);
    r["verdict"] = kippen::to_string(rep.verdict);
    r["delta"] = rep.delta;
    r["thetas"] = rep.thetas;
    r["overlaps"] = rep.values;
    r["witness"] = rep.witness;
    r["min_gap"] = rep.min_gap;
    r["tolerance"] = o.tol;
    switch (rep.verdict) {
      case ProbeVerdict::ConsistentUpToTolerance: code = kHolds; break;
      case ProbeVerdict::NotCircular:
      case ProbeVerdict::NotRotationallyInvariant: code = kRefuted; break;
      case ProbeVerdict::Inconclusive: code = kInconclusive; break;
    }
    return emit(o, argv, &in, r, code, clock.seconds());
  }
  auto c = make_contraction(exact_square(in, o));
  r["matrix"] = contraction_json(c);
  if (mode == "circularity") {
    auto rad = is_radial(p_poly(c));
    r["property"] = "Circularity";
    r["holds"] = rad.radial;
    r["method"] = "radiality of det(I - xC - yC*) in (x, y)";
    r["witness"] = witness_json(rad.witness);
    code = rad.radial ? kHolds : kRefuted;
  } else if (mode == "defect-pencil") {
    auto rad = is_radial(defect_pencil_poly(c));
    r["property"] = "defect-pencil Circularity";
    r["holds"] = rad.radial;
    r["method"] = "radiality of det(alpha I + xC + yC* + tD) in (x, y)";
    r["witness"] = witness_json(rad.witness);
    code = rad.radial ? kHolds : kRefuted;
  } else if (mode == "tower") {
    require_contraction(c);
    auto s = tower_circularity_scan(c);
    r["property"] = "Circularity of tower levels T_1 .. T_{d+1}";
    r["t0_circular"] = s.t0_circular;
    json levels = json::array();
    for (std::size_t j = 0; j < s.level_circular.size(); ++j)
      levels.push_back({{"level", j + 1}, {"circular", static_cast<bool>(s.level_circular[j])}});
    r["levels"] = levels;
    r["holds"] = s.all_levels_circular;
    r["defect_pencil_radial"] = s.defect_pencil_radial;
    r["consistent"] = s.consistent;
    if (!s.all_levels_circular) {
      for (std::size_t j = 0; j < s.level_circular.size(); ++j)
        if (!s.level_circular[j]) {
          r["witness"] = {{"level", j + 1}};
          break;
        }
    }
    code = s.all_levels_circular ? kHolds : kRefuted;
  } else if (mode == "rotinv-words") {
    int L = max_word_len > 0 ? max_word_len : static_cast<int>(2 * c.n * c.n);
    auto s = unbalanced_trace_scan(c, L);
    r["property"] = "rotational invariance (traces of unbalanced words)";
    r["max_word_len"] = L;
    if (s.violation) {
      // primary witness: largest |trace|, ties broken by canonical order
      const auto* best = &s.witnesses.front();
      json all = json::array();
      for (const auto& w : s.witnesses) {
        if (w.trace.norm2() > best->trace.norm2()) best = &w;
        all.push_back({{"word", w.word.to_string()}, {"trace", kippen::to_string(w.trace)}});
      }
      r["holds"] = false;
      r["witness"] = {{"word", best->word.to_string()}, {"trace", kippen::to_string(best->trace)}, {"length", s.length}};
      r["all_witnesses"] = all;
      code = kRefuted;
    } else if (s.exhausted) {
      r["holds"] = true;
      r["reason"] = "every word of length " + std::to_string(s.length) + " vanishes";
      code = kHolds;
    } else {
      r["holds"] = nullptr;
      r["reason"] = "no violation up to length " + std::to_string(L);
      code = kInconclusive;
    }
  } else {
    throw Error("unknown mode " + mode);
  }
  return emit(o, argv, &in, r, code, clock.seconds());
}

int cmd_plot(const Common& o, bool assoc, const std::vector<double>& circles, const std::vector<std::string>& argv) {
  Clock clock;
  Input in = load(o);
  CMat C = numeric_square(in);
  CMat A = assoc ? assoc_isometry_numeric(C).A : C;
  auto branches = kippenhahn_sample(A, o.grid);
  if (o.format == "csv" || o.format == "svg") {
    std::ostringstream os;
    if (o.format == "csv") write_csv(os, branches);
    else write_svg(os, branches, circles);
    if (o.out.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw Error("cannot write " + o.out);
      f << os.str();
    }
    return kHolds;
  }
  json r;
  r["assoc"] = assoc;
  r["size"] = A.rows();
  r["grid"] = o.grid;
  json bj = json::array();
  for (const auto& b : branches) {
    auto bounds = circle_deviation_bounds(branch_points(b));
    bj.push_back({{"branch", b.index},
                  {"origin_circle_deviation", origin_circle_deviation(b)},
                  {"best_circle_deviation", {{"lower", bounds.lower}, {"upper", bounds.upper},
                                             {"certified", bounds.certified}}},
                  {"gap_floor", b.gap_floor}});
  }
  r["branches"] = bj;
  return emit(o, argv, &in, r, kHolds, clock.seconds());
}

int cmd_examples(const Common& o, const std::string& which, const std::vector<std::string>& argv) {
  Clock clock;
  std::vector<std::string> ids = which == "all" ? example_ids() : std::vector<std::string>{which};
  for (const auto& id : ids) {
    auto known = example_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      std::cerr << "kippen: unknown example '" << id << "'; known:";
      for (const auto& k : known) std::cerr << ' ' << k;
      std::cerr << '\n';
      return kInputError;
    }
  }
  json r = json::array();
  bool all = true;
  for (const auto& id : ids) {
    auto rep = run_example(id);
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"kind", c.kind}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
      if (!c.pass && all) {
        std::cerr << "kippen: " << rep.id << ": " << c.name << ": expected " << c.expected << ", got " << c.actual << '\n';
        all = false;
      }
    }
    r.push_back({{"example", rep.id}, {"pass", rep.pass()}, {"checks", checks}});
  }
  return emit(o, argv, nullptr, {{"examples", r}, {"pass", all}}, all ? kHolds : kRefuted, clock.seconds());
}

int cmd_obstruction(const Common& o, int max_n, const std::vector<std::string>& argv) {
  Clock clock;
  Input in = load(o);
  auto c = make_contraction(exact_square(in, o));
  require_contraction(c);
  int N = max_n >= 0 ? max_n : static_cast<int>(2 * c.n + 2);
  auto ob = first_obstruction(c, N);
  bool qrad = is_radial(q_poly(c)).radial;
  json r;
  r["matrix"] = contraction_json(c);
  r["max_n"] = N;
  r["q_radial"] = qrad;
  if (ob) {
    r["first_nonzero"] = {{"N", ob->N},
                          {"A_N", ob->value.to_string()},
                          {"A_N_at_theta_0", kippen::to_string(ob->value.evaluate<Gaussian>({{Var::w, Gaussian(1)}}))}};
  } else {
    r["first_nonzero"] = nullptr;
  }
  // radiality of Q is the exact decision; the Laurent coefficients are the witness
  r["consistent"] = qrad == !ob.has_value();
  int code = qrad ? kHolds : kRefuted;
  if (!qrad && !ob) code = kInconclusive;
  return emit(o, argv, &in, r, code, clock.seconds());
}

int cmd_family(const Common& o, int size, const std::string& check, const std::vector<std::string>& argv) {
  Clock clock;
  if (size < 4) throw Error("--size must be >= 4");
  json r;
  r["size"] = size;
  auto fc = family_circularity(size);
  r["circularity"] = {{"holds", fc.circular}, {"status", fc.label}};
  bool ok = !fc.claimed || fc.circular;
  bool even = size % 2 == 0;
  int m = size / 2;
  bool want_all = check == "all";
  if (!even && !want_all) throw Error("--check " + check + " needs an even --size");
  if (even && m >= 2) {
    if (want_all || check == "factorization") {
      auto f = family_factorization_check(m);
      r["factorization"] = {{"holds", f.holds}, {"P_m", family_P(m).to_string()}, {"Q_m", family_Q(m).to_string()}};
      r["identity"] = family_identity_check(m);
      ok = ok && f.holds && family_identity_check(m);
    }
    if (want_all || check == "eigvec") {
      PrecisionScope scope(128);
      json ev = json::array();
      for (auto which : {FamilyCase::theta_0, FamilyCase::theta_minus_pi_4, FamilyCase::theta_minus_pi_2}) {
        auto e = family_eigvec(m, which);
        ev.push_back({{"case", kippen::to_string(which)}, {"lambda", e.lambda.str(30)}, {"residual", kippen::to_string(e.residual)}});
      }
      r["eigvec"] = ev;
    }
    if (want_all || check == "overlap") {
      PrecisionScope scope(128);
      auto ov = family_overlap_compare(m);
      r["overlap"] = {{"first", ov.first.str(30)},
                      {"second", ov.second.str(30)},
                      {"numeric_first", ov.numeric_first},
                      {"numeric_second", ov.numeric_second},
                      {"strict", ov.strict},
                      {"weights_decreasing", ov.weights_decreasing}};
      CMat C = to_eigen(family_matrix(size).matrix);
      auto pr = rotinv_probe(C, kPi / 4, 0, kPi / 4);
      r["probe"] = {{"verdict", kippen::to_string(pr.verdict)}, {"witness", pr.witness}};
      ok = ok && ov.strict && pr.verdict == ProbeVerdict::NotRotationallyInvariant;
    }
  }
  r["pass"] = ok;
  return emit(o, argv, nullptr, r, ok ? kHolds : kRefuted, clock.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Circularity, tower and numerical-range checks for finite matrices"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common o;
  auto add_common = [&](CLI::App* s, bool with_input) {
    if (with_input) s->add_option("--input", o.input, "matrix file (kippen-matrix v1)")->required();
    s->add_option("--out", o.out, "write the report to this path");
    s->add_flag("--float", o.allow_float, "accept float entries for exact computations");
    s->add_option("--tol", o.tol, "numeric tolerance")->capture_default_str();
    s->add_option("--grid", o.grid, "angle grid size")->capture_default_str()->check(CLI::Range(8, 1 << 20));
  };

  std::string mode;
  int max_word_len = 0;
  double delta = kPi / 4, theta1 = 0, theta2 = kPi / 4;
  auto* check = app.add_subcommand("check", "decide a property of a matrix");
  add_common(check, true);
  check->add_option("--mode", mode, "property to decide")
      ->required()
      ->check(CLI::IsMember({"circularity", "defect-pencil", "tower", "rotinv-words", "rotinv-probe"}));
  check->add_option("--max-word-len", max_word_len, "word-length bound (default 2n^2)");
  check->add_option("--delta", delta, "probe rotation angle")->capture_default_str();
  check->add_option("--theta1", theta1, "first probe angle")->capture_default_str();
  check->add_option("--theta2", theta2, "second probe angle")->capture_default_str();

  auto* tower = app.add_subcommand("tower", "tower-level and defect-pencil verdicts");
  add_common(tower, true);

  bool assoc = false;
  std::vector<double> circles;
  auto* plot = app.add_subcommand("plot", "sample the Kippenhahn curve");
  add_common(plot, true);
  plot->add_flag("--assoc", assoc, "plot the associated partial isometry");
  plot->add_option("--format", o.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  plot->add_option("--circle", circles, "reference circle radius (repeatable)");

  std::string run = "all";
  auto* examples = app.add_subcommand("examples", "run the golden checks of the explicit examples");
  examples->alias("paper-examples");
  examples->add_option("--run", run, "all or an example id")->capture_default_str();
  examples->add_option("--out", o.out, "write the report to this path");

  int max_n = -1;
  auto* obstruction = app.add_subcommand("obstruction", "first nonzero Laurent coefficient A_N");
  add_common(obstruction, true);
  obstruction->add_option("--max-n", max_n, "largest N examined (default 2n + 2)");

  int size = 0;
  std::string fam_check = "all";
  auto* family = app.add_subcommand("family", "checks on the tridiagonal-plus-corners family");
  family->add_option("--size", size, "matrix size n >= 4")->required();
  family->add_option("--check", fam_check, "factorization, eigvec, overlap or all")
      ->check(CLI::IsMember({"factorization", "eigvec", "overlap", "all"}))
      ->capture_default_str();
  family->add_option("--out", o.out, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(o, mode, max_word_len, delta, theta1, theta2, args);
    if (*tower) return cmd_check(o, "tower", 0, delta, theta1, theta2, args);
    if (*plot) return cmd_plot(o, assoc, circles, args);
    if (*examples) return cmd_examples(o, run, args);
    if (*obstruction) return cmd_obstruction(o, max_n, args);
    if (*family) return cmd_family(o, size, fam_check, args);
  } catch (const std::exception& e) {
    std::cerr << "kippen: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
