#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "pentagon/metric.hpp"
#include "pentagon/report.hpp"
#include "pentagon/zeta_io.hpp"

namespace {

using namespace pentagon;
using nlohmann::json;

double resolve_tol(bool flag_given, double flag_value) {
  if (flag_given) {
    if (!(flag_value > 0.0)) throw ConfigError("--tol must be positive");
    return flag_value;
  }
  if (const char* env = std::getenv("PENTAGON_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw ConfigError(std::string("PENTAGON_TOL is not a positive number: ") + env);
    return v;
  }
  return 1e-9;
}

std::string triple_str(const Triple& t) {
  return std::to_string(t.i) + std::to_string(t.j) + std::to_string(t.k);
}

void print_report(const Report& rep) {
  // Display rounds to 3 significant digits; the JSON report keeps full precision.
  for (const ModeSection& sec : rep.sections) {
    std::cout << "mode " << sec.mode << ": n=" << sec.n << " trials=" << sec.trials
              << " passed=" << sec.passed << " [" << (sec.pass ? "pass" : "fail") << "]\n";
    for (const auto& [key, value] : sec.max_residuals)
      std::cout << "  max " << key << " = " << std::setprecision(3) << value << "\n";
    for (const TrialRecord& rec : sec.records)
      if (!rec.error.empty())
        std::cout << "  trial " << rec.trial << ": " << rec.error << "\n";
  }
  std::cout << "overall: " << (rep.pass() ? "pass" : "fail") << " (tol " << rep.tol << ", seed "
            << rep.seed << ", rng " << rep.rng << ")\n";
}

int cmd_verify(const std::string& mode_str, int n, int trials, std::uint64_t seed,
               bool tol_given, double tol_value, const std::string& zeta_path,
               const std::string& out_path) {
  TrialConfig cfg;
  cfg.mode = parse_mode(mode_str);
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.tol = resolve_tol(tol_given, tol_value);
  if (!zeta_path.empty())
    cfg.zeta = load_zeta_family(zeta_path, cfg.mode != Mode::DirectSum);

  Report rep = run(cfg);
  print_report(rep);
  if (!out_path.empty()) save_report(out_path, rep);
  return rep.pass() ? 0 : 1;
}

void print_matrix(const CMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::cout << "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Complex v = m(r, c);
      if (c) std::cout << ", ";
      if (std::abs(v.imag()) < 1e-14)
        std::cout << v.real();
      else
        std::cout << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    }
    std::cout << "]\n";
  }
}

int cmd_demo(const std::string& what) {
  if (what != "kashaev") throw ConfigError("unknown demo \"" + what + "\" (try: kashaev)");

  const std::array<Complex, 5> z = {5.0, 4.0, 3.0, 2.0, 1.0};
  std::cout << "rotation solution at zeta = (5, 4, 3, 2, 1)\n\n";
  FlipSet fs = kashaev_flipset(z);
  const auto& table = flip_table();
  for (int f = 0; f < 5; ++f) {
    const FlipInfo& fi = table[static_cast<std::size_t>(f)];
    std::array<Complex, 4> sub;
    for (std::size_t v = 0; v < 4; ++v)
      sub[v] = z[static_cast<std::size_t>(fi.tet[v] - 1)];
    AnglePair ang = kashaev_angles(sub);
    std::cout << fi.name << " (faces " << triple_str(fi.before[static_cast<std::size_t>(fi.slots[0])])
              << "," << triple_str(fi.before[static_cast<std::size_t>(fi.slots[1])]) << " -> "
              << triple_str(fi.after[static_cast<std::size_t>(fi.slots[0])]) << ","
              << triple_str(fi.after[static_cast<std::size_t>(fi.slots[1])]) << "), tet "
              << fi.tet[0] << fi.tet[1] << fi.tet[2] << fi.tet[3] << ", slots (" << fi.slots[0]
              << "," << fi.slots[1] << ")\n";
    std::cout << "  cos = " << ang.cos_phi.real() << "  sin = " << ang.sin_phi.real()
              << "  cos^2 = " << (ang.cos_phi * ang.cos_phi).real() << "\n";
    print_matrix(flip_matrix(fs, f));
    std::cout << "\n";
  }
  std::cout << "pentagon residual max|QP - TSR|  = " << check_pentagon(fs) << "\n";
  std::cout << "orthogonality residual           = " << orthogonality_residual(fs) << "\n";
  return 0;
}

int cmd_extract(const std::string& zeta_path, const std::string& out_path) {
  ZetaFamily zf = load_zeta_family(zeta_path);
  if (zf.n != 2) throw ConfigError("extract-weights needs a 2 x 2 family");
  FlipSet fs = isotropic_flips_generic(zf);
  std::array<GaussWeight, 5> ws = weights_from_flips(fs);
  PentagonGrassmannResult pg = pentagon_grassmann(ws);

  json out_weights = json::array();
  for (const GaussWeight& w : ws) out_weights.push_back(gauss_weight_json(w));
  json out{{"n", zf.n},
           {"weights", std::move(out_weights)},
           {"konst", complex_json(pg.konst)},
           {"deviation", pg.deviation}};
  std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructs pentagon-relation flip solutions and checks them numerically"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "randomized verification of one mode (or all)");
  std::string mode_str;
  int n = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol_value = 1e-9;
  std::string zeta_path, out_path;
  verify->add_option("mode", mode_str,
                     "direct-sum | orthogonal | isotropic | grassmann-pentagon | kashaev | "
                     "exotic | all")
      ->required();
  verify->add_option("--n", n, "block size where the mode allows one (default 2)");
  verify->add_option("--trials", trials, "random trials per mode (default 100)");
  verify->add_option("--seed", seed, "rng seed (default 1)");
  verify->add_option("--tol", tol_value,
                     "pass threshold on residuals (default 1e-9, or PENTAGON_TOL)");
  verify->add_option("--zeta", zeta_path, "JSON file with a fixed parameter family");
  verify->add_option("--out", out_path, "write the JSON report to this file");

  auto* demo = app.add_subcommand("demo", "print a worked example");
  std::string what;
  demo->add_option("what", what, "example name (kashaev)")->required();

  auto* extract =
      app.add_subcommand("extract-weights", "Gaussian weight data of the isotropic flips");
  std::string ew_zeta, ew_out;
  extract->add_option("--zeta", ew_zeta, "JSON file with a 2 x 2 parameter family")->required();
  extract->add_option("--out", ew_out, "write the weights to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return cmd_verify(mode_str, n, trials, seed, verify->count("--tol") > 0, tol_value,
                        zeta_path, out_path);
    if (demo->parsed()) return cmd_demo(what);
    return cmd_extract(ew_zeta, ew_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pentagon::Error& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }
}
