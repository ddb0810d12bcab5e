// msym: command-line front end for the multisymmetric reduction toolkit.
//
// Exit codes: 0 ok, 1 counterexample or failed consistency check, 2 usage,
// parse or precondition error.

#include "msym/expr.hpp"
#include "msym/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

msym::Polynomial load(const std::string& path) { return msym::parse_input(read_file(path)); }

std::vector<std::uint32_t> parse_uint_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::istringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  return out;
}

std::vector<msym::Rational> parse_radii(const std::string& s) {
  std::vector<msym::Rational> out;
  std::istringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) out.push_back(msym::parse_rational(tok));
  if (out.empty()) throw std::invalid_argument("empty radius list");
  return out;
}

json to_json(const msym::KappaBound& b) {
  return {{"value", b.value},
          {"unclamped", b.unclamped.get_str()},
          {"method", msym::to_string(b.method)},
          {"witness", msym::to_string(b.witness)},
          {"n_clamped", b.n_clamped}};
}

std::string describe(const msym::KappaBound& b) {
  std::string s = msym::to_string(b.method) + ": " + std::to_string(b.value) + "  [" + msym::to_string(b.witness) + "]";
  if (b.n_clamped) s += "  (clamped from " + b.unclamped.get_str() + ")";
  return s;
}

json profile_json(const msym::ExponentProfile& e) {
  json arr = json::array();
  for (const auto& p : e.points) arr.push_back(p);
  return arr;
}

std::vector<std::uint32_t> column_degrees(const msym::ExponentProfile& e) {
  std::vector<std::uint32_t> d(e.k, 0);
  for (const auto& p : e.points) {
    for (std::size_t j = 0; j < e.k; ++j) d[j] = std::max(d[j], p[j]);
  }
  return d;
}

json report_json(const msym::MinReport& r) {
  json j = {{"value", r.value}, {"starts", r.starts}, {"converged_fraction", r.converged_fraction}, {"seed", r.seed}};
  if (r.lam) j["lambda"] = r.lam->parts();
  return j;
}

struct Common {
  std::string file;
  bool as_json = false;
  std::uint32_t cap = 8;
};

int cmd_analyze(const Common& c) {
  msym::Polynomial f = load(c.file);
  const bool sym = msym::is_k_symmetric(f);
  auto e = msym::exponent_profile(f);
  auto deg = msym::degree(f);
  std::vector<msym::KappaBound> bounds;
  if (sym) bounds = msym::applicable_kappa_bounds(f, c.cap);
  if (c.as_json) {
    json j = {{"n", f.shape().rows},
              {"k", f.shape().cols},
              {"terms", f.size()},
              {"k_symmetric", sym},
              {"degree", deg.to_string()},
              {"column_degrees", column_degrees(e)},
              {"E_f", profile_json(e)}};
    json arr = json::array();
    for (const auto& b : bounds) arr.push_back(to_json(b));
    j["bounds"] = arr;
    if (sym) j["best"] = to_json(msym::best_kappa(f, c.cap));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "shape: n=" << f.shape().rows << " k=" << f.shape().cols << ", " << f.size() << " terms\n";
  std::cout << "k-symmetric: " << (sym ? "yes" : "no") << "\n";
  std::cout << "degree: " << deg.to_string() << "\n";
  std::cout << "column degrees: " << msym::to_string(msym::ExponentTuple(column_degrees(e))) << "\n";
  std::cout << "E_f: " << msym::to_string(e) << "\n";
  if (!sym) {
    std::cout << "kappa bounds withheld: input is not k-symmetric\n";
    return kOk;
  }
  std::cout << "kappa bounds:\n";
  for (const auto& b : bounds) std::cout << "  " << describe(b) << "\n";
  std::cout << "best: " << describe(msym::best_kappa(f, c.cap)) << "\n";
  return kOk;
}

int cmd_kappa(const Common& c, const std::string& weights) {
  msym::Polynomial f = load(c.file);
  std::vector<msym::KappaBound> bounds;
  msym::KappaBound best;
  if (!weights.empty()) {
    best = msym::kappa_weighted(f, msym::Weights(parse_uint_list(weights)));
    bounds.push_back(best);
  } else {
    bounds = msym::applicable_kappa_bounds(f, c.cap);
    best = msym::best_kappa(f, c.cap);
  }
  if (c.as_json) {
    json arr = json::array();
    for (const auto& b : bounds) arr.push_back(to_json(b));
    std::cout << json{{"best", to_json(best)}, {"bounds", arr}}.dump(2) << "\n";
  } else {
    std::cout << "kappa <= " << best.value << "  via " << describe(best) << "\n";
  }
  return kOk;
}

int cmd_hessform(const Common& c, const std::string& out) {
  msym::Polynomial f = load(c.file);
  msym::HessianForm g = msym::hessian_form(f, c.file);
  std::string text = "# hessian form of " + g.source + "; columns 1..k are x, k+1..2k are x~\n" + msym::serialize(g.g);
  if (out.empty()) {
    if (c.as_json) {
      std::cout << json{{"source", g.source}, {"terms", g.g.size()}, {"polynomial", msym::serialize(g.g)}}.dump(2) << "\n";
    } else {
      std::cout << text;
    }
  } else {
    std::ofstream(out) << text;
    if (c.as_json) {
      std::cout << json{{"source", g.source}, {"terms", g.g.size()}, {"output", out}}.dump(2) << "\n";
    } else {
      std::cout << "wrote " << g.g.size() << " terms to " << out << "\n";
    }
  }
  return kOk;
}

int cmd_hf(const Common& c) {
  msym::Polynomial f = load(c.file);
  if (!msym::is_k_symmetric(f)) throw msym::PreconditionError("polynomial is not k-symmetric");
  auto h = msym::h_profile(f);
  auto egf = msym::e_gf_profile(f);
  auto bounds = msym::applicable_hessian_bounds(f, c.cap);
  if (c.as_json) {
    json arr = json::array();
    for (const auto& b : bounds) arr.push_back(to_json(b));
    json j = {{"H_f", profile_json(h)}, {"E_gf", profile_json(egf)}, {"bounds", arr}};
    if (!bounds.empty()) j["best"] = to_json(msym::best_hessian_kappa(f, c.cap));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "H_f: " << msym::to_string(h) << "\n";
  std::cout << "E_gf: " << msym::to_string(egf) << "\n";
  if (bounds.empty()) {
    std::cout << "no Hessian kappa bound applies (degree <= 2)\n";
    return kOk;
  }
  std::cout << "kappa(g_f) bounds:\n";
  for (const auto& b : bounds) std::cout << "  " << describe(b) << "\n";
  std::cout << "best: " << describe(msym::best_hessian_kappa(f, c.cap)) << "\n";
  return kOk;
}

std::string instance_filename(const msym::Partition& lam) {
  std::string s = "lambda";
  for (auto p : lam.parts()) s += "_" + std::to_string(p);
  return s + ".poly";
}

int cmd_reduce(const Common& c, std::size_t m, const std::string& dir, bool hessian) {
  msym::Polynomial f = load(c.file);
  std::string label = c.file;
  if (hessian) {
    f = msym::hessian_form(f).g;
    label = "hessian form of " + c.file;
  }
  if (m < 1) throw std::invalid_argument("--m must be at least 1");
  msym::Reducer reducer(f, label);
  msym::ReductionPlan plan(reducer, m);
  if (!dir.empty()) fs::create_directories(dir);
  std::map<std::size_t, std::size_t> per_length;
  std::size_t count = 0;
  json files = json::array();
  while (auto inst = plan.next()) {
    ++count;
    ++per_length[inst->lam.length()];
    if (dir.empty()) {
      if (!c.as_json) std::cout << msym::serialize(*inst) << "\n";
    } else {
      fs::path p = fs::path(dir) / instance_filename(inst->lam);
      std::ofstream(p) << msym::serialize(*inst);
      files.push_back(p.string());
    }
  }
  if (c.as_json) {
    json lengths = json::object();
    for (auto [ell, k] : per_length) lengths[std::to_string(ell)] = k;
    std::cout << json{{"instances", count}, {"per_length", lengths}, {"files", files}}.dump(2) << "\n";
  } else if (!dir.empty()) {
    std::cout << "wrote " << count << " instances to " << dir << "\n";
    for (auto [ell, k] : per_length) std::cout << "  length " << ell << ": " << k << "\n";
  }
  return kOk;
}

int cmd_verify(const Common& c, std::size_t m, const std::string& radii, std::size_t starts, std::uint64_t seed,
               double tol) {
  msym::Polynomial f = load(c.file);
  if (starts == 0) starts = msym::default_starts(f.shape().variables());
  auto rep = msym::kappa_consistency_experiment(f, m, parse_radii(radii), starts, seed, tol);
  if (c.as_json) {
    json recs = json::array();
    for (const auto& r : rep.records) {
      recs.push_back({{"radius_sq", r.radius_sq.get_str()},
                      {"full", report_json(r.full)},
                      {"reduced", report_json(r.reduced)},
                      {"pass", r.pass}});
    }
    std::cout << json{{"m", rep.m}, {"tolerance", rep.tolerance}, {"records", recs}, {"pass", rep.all_pass()}}.dump(2)
              << "\n";
  } else {
    std::cout.precision(12);
    for (const auto& r : rep.records) {
      std::cout << "r=" << r.radius_sq.get_str() << " full " << r.full.value << " (converged "
                << r.full.converged_fraction << ")\n";
      std::cout << "r=" << r.radius_sq.get_str() << " A_" << rep.m << " " << r.reduced.value << " at lambda="
                << (r.reduced.lam ? msym::to_string(*r.reduced.lam) : "-") << "  " << (r.pass ? "PASS" : "FAIL")
                << "\n";
    }
    std::cout << "summary: m=" << rep.m << " tol=" << rep.tolerance << " " << (rep.all_pass() ? "consistent" : "INCONSISTENT")
              << "\n";
  }
  return rep.all_pass() ? kOk : kFinding;
}

int cmd_convexity(const Common& c, const msym::ConvexityOptions& opts) {
  msym::Polynomial f = load(c.file);
  auto rep = msym::convexity_pipeline(f, opts);
  std::size_t clean = 0;
  for (const auto& i : rep.instances) clean += i.verdict.counterexample ? 0 : 1;
  if (c.as_json) {
    json inst = json::array();
    for (const auto& i : rep.instances) {
      json j = {{"lambda", i.lam.parts()},
                {"variables", i.variables},
                {"terms", i.terms},
                {"verdict", msym::to_string(i.verdict)},
                {"min_value", i.verdict.value},
                {"sphere_min", i.verdict.sphere_min}};
      if (i.verdict.counterexample) {
        j["point"] = i.verdict.point;
        j["exact_value"] = i.verdict.exact_value.get_str();
      }
      inst.push_back(j);
    }
    json j = {{"verdict", rep.verdict()}, {"heuristic", !rep.exact.has_value()}, {"instances", inst},
              {"no_counterexample", clean}};
    if (rep.bound) j["bound"] = to_json(*rep.bound);
    if (rep.exact) j["exact"] = *rep.exact;
    j["hessian_terms"] = rep.hessian_terms;
    std::cout << j.dump(2) << "\n";
  } else {
    if (rep.exact) {
      std::cout << "degree <= 2, decided exactly: " << rep.verdict() << "\n";
    } else {
      std::cout << "g_f: " << rep.hessian_terms << " terms\n";
      std::cout << "kappa(g_f) <= " << rep.bound->value << "  via " << describe(*rep.bound) << "\n";
      std::cout.precision(10);
      for (const auto& i : rep.instances) {
        std::cout << "lambda=" << msym::to_string(i.lam) << " vars=" << i.variables << " sphere_min=" << i.verdict.sphere_min << " "
                  << msym::to_string(i.verdict) << "\n";
      }
      std::cout << clean << "/" << rep.instances.size() << " instances NoCounterexampleFound (heuristic)\n";
      std::cout << "verdict: " << rep.verdict() << "\n";
    }
  }
  return rep.confirmed_counterexample() ? kFinding : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension reduction for symmetric polynomial non-negativity and convexity"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("file", c.file, "input file (expression or poly format)")->required();
    sub->add_flag("--json", c.as_json, "machine-readable output");
  };

  auto* analyze = app.add_subcommand("analyze", "symmetry, degrees, E_f and kappa bounds");
  add_common(analyze);
  analyze->add_option("--cap", c.cap, "weight cap for the simplex fit");

  std::string weights;
  auto* kappa = app.add_subcommand("kappa", "kappa bounds");
  add_common(kappa);
  kappa->add_option("--weights", weights, "comma-separated weights w1,...,wk");
  kappa->add_option("--cap", c.cap, "weight cap for the simplex fit");

  std::string out;
  auto* hessform = app.add_subcommand("hessform", "emit the Hessian form g_f");
  add_common(hessform);
  hessform->add_option("-o,--output", out, "output file");

  auto* hf = app.add_subcommand("hf", "H_f, E_{g_f} and kappa(g_f) bounds");
  add_common(hf);
  hf->add_option("--cap", c.cap, "weight cap for the simplex fit");

  std::size_t m = 1;
  std::string dir;
  bool hessian = false;
  auto* reduce = app.add_subcommand("reduce", "write all reduced instances up to level m");
  add_common(reduce);
  reduce->add_option("--m", m, "largest number of distinct rows")->required();
  reduce->add_option("-o,--output", dir, "output directory");
  reduce->add_flag("--hessian", hessian, "reduce the Hessian form g_f instead of f");

  std::string radii = "1,4,9";
  std::size_t starts = 0;
  std::uint64_t seed = 0;
  double tol = 1e-5;
  auto* verify = app.add_subcommand("verify", "kappa-consistency experiment");
  add_common(verify);
  verify->add_option("--m", m, "subspace level")->required();
  verify->add_option("--radii", radii, "comma-separated squared radii");
  verify->add_option("--starts", starts, "multistart count (0: automatic)");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "relative tolerance");

  msym::ConvexityOptions conv;
  std::string conv_radii = "1,4,16";
  auto* convexity = app.add_subcommand("convexity", "convexity pipeline on g_f");
  add_common(convexity);
  convexity->add_option("--radii", conv_radii, "comma-separated squared radii");
  convexity->add_option("--starts", conv.starts, "multistart count (0: automatic)");
  convexity->add_option("--seed", conv.seed, "random seed");
  convexity->add_option("--cap", conv.weight_cap, "weight cap for the simplex fit");
  convexity->add_flag("--all-levels", conv.all_levels, "also check partitions shorter than the bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(c);
    if (*kappa) return cmd_kappa(c, weights);
    if (*hessform) return cmd_hessform(c, out);
    if (*hf) return cmd_hf(c);
    if (*reduce) return cmd_reduce(c, m, dir, hessian);
    if (*verify) return cmd_verify(c, m, radii, starts, seed, tol);
    if (*convexity) {
      conv.radii = parse_radii(conv_radii);
      return cmd_convexity(c, conv);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
