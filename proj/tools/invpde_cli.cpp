// invpde: command-line front end.
//
//   invpde build     --geometry G (--preset P | --expr FILE) [--n N] [--latex] [--out FILE]
//   invpde eval      DESC JET
//   invpde verify    DESC [--samples N] [--seed S] [--scale s] [--tol t] [--surface NAME] [--out FILE]
//   invpde normalize --geometry G JET
//
// DESC is a descriptor JSON file or a preset name.  Exit codes: 0 ok/pass,
// 1 verification failed, 2 usage or schema error, 3 I/O error, 4 domain error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "invpde/errors.hpp"
#include "invpde/json_io.hpp"

using namespace invpde;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kIo = 3, kDomain = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write '" + path + "'");
}

// 17 significant digits, always with a decimal point or exponent.
std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

PdeDescriptor load_descriptor(const std::string& arg, int n) {
  if (std::filesystem::exists(arg)) return descriptor_from_json(read_json(arg));
  Geometry g;
  try {
    g = preset_geometry(arg);
  } catch (const InvalidExpr&) {
    throw IoError("'" + arg + "' is neither a readable descriptor file nor a preset name");
  }
  return preset(arg, g, n);
}

int cmd_build(const std::string& geometry, const std::string& preset_name, const std::string& expr_file, int n,
              bool latex, const std::string& out) {
  const Geometry g = geometry_from_string(geometry);
  PdeDescriptor d;
  if (!preset_name.empty()) {
    d = preset(preset_name, g, n);
  } else {
    d = build(g, n, expr_from_json(read_json(expr_file)));
  }
  std::string text = emit(d, EmitFormat::json) + "\n";
  if (latex) text += emit(d, EmitFormat::latex) + "\n";
  write_output(out, text);
  return kOk;
}

int cmd_eval(const std::string& desc_arg, const std::string& jet_path, int n) {
  const PdeDescriptor d = load_descriptor(desc_arg, n);
  const GraphJet j = jet_from_json(read_json(jet_path));
  j.validate();
  try {
    const ResidualValue r = evaluate(d, j);
    std::cout << "residual " << number(r.value) << "\n"
              << "scale " << number(r.scale) << "\n"
              << "normalized " << number(r.normalized()) << "\n"
              << "domain ok\n";
    return kOk;
  } catch (const DegenerateHessian&) {
    std::cout << "domain degenerate_hessian\n";
    throw;
  } catch (const NotGraph&) {
    std::cout << "domain not_graph\n";
    throw;
  } catch (const ChartDomain&) {
    std::cout << "domain chart_domain\n";
    throw;
  }
}

struct VerifyOptions {
  int samples = 100;
  std::optional<std::uint64_t> seed;
  double scale = 0.5;
  double jet_scale = 1.0;
  double tol = 1e-7;
  bool translations_only = false;
  std::string surface;
  int points = 200;
  double radius = 0.5;
  std::string out;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("INVPDE_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(std::string("INVPDE_SEED is not an unsigned integer: '") + env + "'");
  }
}

int cmd_verify(const std::string& desc_arg, int n, const VerifyOptions& o) {
  const PdeDescriptor d = load_descriptor(desc_arg, n);
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();
  Report r;
  if (!o.surface.empty()) {
    const Germ germ = germ_by_name(o.surface);
    if (germ.n != d.n) throw DimensionMismatch("surface and descriptor dimensions differ");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-o.radius, o.radius);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(std::max(o.points, 0)));
    for (auto& p : pts) {
      p.resize(static_cast<std::size_t>(d.n));
      for (double& x : p) x = u(rng);
    }
    r = check_solution(d, germ, pts, o.tol);
    r.seed = seed;
  } else {
    SampleConfig cfg;
    cfg.seed = seed;
    cfg.count = o.samples;
    cfg.scale = o.scale;
    cfg.jet_scale = o.jet_scale;
    cfg.tol = o.tol;
    cfg.translations_only = o.translations_only;
    r = invariance_report(d, cfg);
  }
  write_output(o.out, to_json(r).dump(2) + "\n");
  return r.pass ? kOk : kFail;
}

int cmd_normalize(const std::string& geometry, const std::string& jet_path) {
  const Geometry g = geometry_from_string(geometry);
  const GraphJet j = jet_from_json(read_json(jet_path));
  j.validate();
  if (j.chart != chart_for(g)) throw ChartMismatch("jet chart does not belong to the geometry");
  const Normalization nz = normalize_to_origin(g, j);
  json out;
  out["g"] = to_json(nz.g);
  out["normalized"] = to_json(nz.normalized);
  out["signature"] = nz.signature;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const DegenerateHessian*>(&e) || dynamic_cast<const NotGraph*>(&e) ||
      dynamic_cast<const ChartDomain*>(&e) || dynamic_cast<const SingularJacobian*>(&e) ||
      dynamic_cast<const SingularMetric*>(&e) || dynamic_cast<const DivisionByZero*>(&e) ||
      dynamic_cast<const DivisionBySingular*>(&e))
    return kDomain;
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant PDEs of hypersurfaces: build, evaluate and verify"};
  app.require_subcommand(1);

  std::string geometry, preset_name, expr_file, out, desc_arg, jet_path;
  int n = 2;
  bool latex = false;
  VerifyOptions vo;
  std::uint64_t seed_flag = 0;

  auto* build_cmd = app.add_subcommand("build", "Build a descriptor from a preset or an expression file");
  build_cmd->add_option("--geometry", geometry, "euclidean | affine | projective | conformal")->required();
  auto* p = build_cmd->add_option("--preset", preset_name,
                                  "minimal-surface | monge-ampere | umbilical | affine-cubic | projective-cubic");
  auto* e = build_cmd->add_option("--expr", expr_file, "Expression JSON file");
  p->excludes(e);
  build_cmd->add_option("--n", n, "Number of independent variables")->check(CLI::Range(1, 8));
  build_cmd->add_flag("--latex", latex, "Also print the expanded polynomial as LaTeX");
  build_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a residual on a jet");
  eval_cmd->add_option("desc", desc_arg, "Descriptor JSON file or preset name")->required();
  eval_cmd->add_option("jet", jet_path, "Jet JSON file")->required();
  eval_cmd->add_option("--n", n, "Dimension for preset names")->check(CLI::Range(1, 8));

  auto* verify_cmd = app.add_subcommand("verify", "Sample the zero set and check invariance, or check a known solution");
  verify_cmd->add_option("desc", desc_arg, "Descriptor JSON file or preset name")->required();
  verify_cmd->add_option("--n", n, "Dimension for preset names")->check(CLI::Range(1, 8));
  verify_cmd->add_option("--samples", vo.samples, "Number of zero-set samples")->check(CLI::NonNegativeNumber);
  auto* seed_opt = verify_cmd->add_option("--seed", seed_flag, "Seed (default: $INVPDE_SEED or 0)");
  verify_cmd->add_option("--scale", vo.scale, "Size of the random group elements")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--jet-scale", vo.jet_scale, "Spread of the random jets")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", vo.tol, "Pass threshold on the normalized defect")->check(CLI::NonNegativeNumber);
  verify_cmd->add_flag("--translations-only", vo.translations_only, "Use translations only");
  verify_cmd->add_option("--surface", vo.surface, "Check a catalog solution instead of sampling");
  verify_cmd->add_option("--points", vo.points, "Points for --surface")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--radius", vo.radius, "Half-width of the point box for --surface")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", vo.out, "Report file (default stdout)");

  auto* norm_cmd = app.add_subcommand("normalize", "Move a jet to the normal form at the origin");
  norm_cmd->add_option("--geometry", geometry, "euclidean | affine | projective")->required();
  norm_cmd->add_option("jet", jet_path, "Jet JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build_cmd) {
      if (preset_name.empty() && expr_file.empty()) throw InvalidExpr("build needs --preset or --expr");
      return cmd_build(geometry, preset_name, expr_file, n, latex, out);
    }
    if (*eval_cmd) return cmd_eval(desc_arg, jet_path, n);
    if (*verify_cmd) {
      if (seed_opt->count()) vo.seed = seed_flag;
      return cmd_verify(desc_arg, n, vo);
    }
    if (*norm_cmd) return cmd_normalize(geometry, jet_path);
  } catch (const std::exception& err) {
    std::cerr << "invpde: " << err.what() << "\n";
    return exit_code_for(err);
  }
  return kUsage;
}
