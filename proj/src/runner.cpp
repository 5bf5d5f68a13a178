#include "pentagon/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <numbers>

#include "pentagon/metric.hpp"
#include "pentagon/zeta_io.hpp"

namespace pentagon {

namespace {

using Residuals = std::map<std::string, double>;

const std::vector<std::pair<Mode, const char*>>& mode_names() {
  static const std::vector<std::pair<Mode, const char*>> names = {
      {Mode::DirectSum, "direct-sum"},       {Mode::Orthogonal, "orthogonal"},
      {Mode::Isotropic, "isotropic"},        {Mode::GrassmannPentagon, "grassmann-pentagon"},
      {Mode::Kashaev, "kashaev"},            {Mode::Exotic, "exotic"},
      {Mode::All, "all"}};
  return names;
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool resamplable(const Error& e) {
  return dynamic_cast<const SingularMatrix*>(&e) != nullptr ||
         dynamic_cast<const DegenerateGram*>(&e) != nullptr ||
         dynamic_cast<const DegenerateDelta*>(&e) != nullptr ||
         dynamic_cast<const NotGaussianGeneric*>(&e) != nullptr ||
         dynamic_cast<const DegenerateParameters*>(&e) != nullptr;
}

double flipset_off_pattern(const FlipSet& fs) {
  const auto& table = flip_table();
  double worst = 0.0;
  for (int f = 0; f < 5; ++f)
    worst = std::max(worst, off_pattern_mass(flip_matrix(fs, f),
                                             table[static_cast<std::size_t>(f)].slots, fs.n));
  return worst;
}

Residuals trial_direct_sum(SplitMix64& rng, const TrialConfig& cfg, int n) {
  ZetaFamily zf = cfg.zeta ? *cfg.zeta : random_zeta(rng, n);
  FlipSet fs = build_flips(zf);
  Residuals r;
  r["pentagon"] = check_pentagon(fs);
  r["off_pattern"] = flipset_off_pattern(fs);
  double basis = 0.0;
  for (const auto& lbl : face_table())
    basis = std::max(basis, basis_relation_residual(zf, triangle_basis(zf, lbl.triple)));
  r["basis"] = basis;
  return r;
}

Residuals trial_orthogonal(SplitMix64& rng, const TrialConfig& cfg, int n) {
  ZetaFamily zf = cfg.zeta ? *cfg.zeta : random_zeta(rng, n);
  FlipSet fs = orthonormal_flips(zf);
  Residuals r;
  r["pentagon"] = check_pentagon(fs);
  r["orthogonality"] = orthogonality_residual(fs);
  r["off_pattern"] = flipset_off_pattern(fs);
  return r;
}

Residuals trial_isotropic(SplitMix64& rng, const TrialConfig& cfg) {
  ZetaFamily zf = cfg.zeta ? *cfg.zeta : random_zeta(rng, 2);
  FlipSet fs = isotropic_flips(zf);
  Residuals r;
  r["pentagon"] = check_pentagon(fs);
  r["j_orthogonality"] = j_orthogonality_residual(fs);
  r["off_pattern"] = flipset_off_pattern(fs);
  return r;
}

Residuals trial_grassmann(SplitMix64& rng, const TrialConfig& cfg, nlohmann::json& extra) {
  ZetaFamily zf = cfg.zeta ? *cfg.zeta : random_zeta(rng, 2);
  FlipSet fs = isotropic_flips_generic(zf);
  std::array<GaussWeight, 5> ws = weights_from_flips(fs);
  Residuals r;
  PentagonGrassmannResult pg = pentagon_grassmann(ws);
  r["deviation"] = pg.deviation;
  r["matrix_pentagon"] = matrix_pentagon_residual(ws);
  double canon = 0.0;
  for (const GaussWeight& w : ws) canon = std::max(canon, verify_canonical(w));
  r["canonical"] = canon;
  nlohmann::json jw = nlohmann::json::array();
  for (const GaussWeight& w : ws) jw.push_back(gauss_weight_json(w));
  extra = nlohmann::json{{"konst", complex_json(pg.konst)}, {"weights", std::move(jw)}};
  return r;
}

Residuals trial_kashaev(SplitMix64& rng, const TrialConfig& cfg) {
  std::array<Complex, 5> z;
  if (cfg.zeta) {
    for (int v = 1; v <= 5; ++v) z[static_cast<std::size_t>(v - 1)] = cfg.zeta->z(v)(0, 0);
  } else {
    std::array<double, 5> zr = random_decreasing(rng);
    std::copy(zr.begin(), zr.end(), z.begin());
  }
  FlipSet fs = kashaev_flipset(z);
  Residuals r;
  r["pentagon"] = check_pentagon(fs);
  r["orthogonality"] = orthogonality_residual(fs);
  return r;
}

LmFamily lm_family_from_zeta(const ZetaFamily& zf) {
  if (zf.n != 2) throw ConfigError("exotic mode needs a 2 x 2 family");
  LmFamily p;
  for (int v = 1; v <= 5; ++v) {
    LmParts parts;
    try {
      parts = lm_parts(zf.z(v));
    } catch (const DegenerateParameters& e) {
      throw ConfigError(std::string("exotic mode: ") + e.what());
    }
    if (std::abs(parts.lambda.imag()) > 1e-9 || std::abs(parts.mu.imag()) > 1e-9)
      throw ConfigError("exotic mode needs real lambda/mu components");
    p[static_cast<std::size_t>(v - 1)] = {parts.lambda.real(), parts.mu.real()};
  }
  return p;
}

Residuals trial_exotic(SplitMix64& rng, const TrialConfig& cfg) {
  LmFamily p = cfg.zeta ? lm_family_from_zeta(*cfg.zeta) : random_lm(rng);
  std::array<Complex, kNumFaces> scales;
  for (auto& s : scales)
    s = std::polar(0.5 + rng.next_double(), 2.0 * std::numbers::pi * rng.next_double());

  CMatrix closed = exotic_flip_block(p);
  FlipSet fs = exotic_flips(p);
  const auto& slots = flip_table()[0].slots;

  Residuals r;
  r["closed_zero_pattern"] = exotic_zero_mass(closed);
  r["closed_vs_generic"] = max_abs(flip_block(fs.P, slots, 2) - closed);
  r["coupling_vs_det"] = std::abs(mu_coupling(p) - mu_coupling_det(p)) /
                         std::max(1.0, std::abs(mu_coupling(p)));
  r["pentagon"] = check_pentagon(fs);
  r["j_orthogonality"] = j_orthogonality_residual(fs);

  std::array<GaussWeight, 5> ws = weights_from_flips(fs);
  double torsion = 0.0;
  for (const GaussWeight& w : ws) torsion = std::max(torsion, check_constraint_u(w));
  r["torsion"] = torsion;

  FlipSet scaled = exotic_flips(p, [&scales](const Triple& t) {
    return scales[static_cast<std::size_t>(face_position(t))];
  });
  r["conjugation"] =
      solve_diagonal_conjugation(closed, flip_block(scaled.P, slots, 2)).residual;
  return r;
}

int section_block_size(Mode m, const TrialConfig& cfg) {
  switch (m) {
    case Mode::DirectSum:
    case Mode::Orthogonal:
      return cfg.zeta ? cfg.zeta->n : cfg.n;
    case Mode::Kashaev:
      return 1;
    default:
      return 2;
  }
}

void check_fixed_family(Mode m, const TrialConfig& cfg, int n) {
  if (!cfg.zeta) return;
  if (cfg.zeta->n != n)
    throw ConfigError("loaded family has n = " + std::to_string(cfg.zeta->n) + ", " +
                      mode_name(m) + " needs n = " + std::to_string(n));
}

Residuals run_trial(Mode m, SplitMix64& rng, const TrialConfig& cfg, int n,
                    nlohmann::json& extra) {
  switch (m) {
    case Mode::DirectSum:
      return trial_direct_sum(rng, cfg, n);
    case Mode::Orthogonal:
      return trial_orthogonal(rng, cfg, n);
    case Mode::Isotropic:
      return trial_isotropic(rng, cfg);
    case Mode::GrassmannPentagon:
      return trial_grassmann(rng, cfg, extra);
    case Mode::Kashaev:
      return trial_kashaev(rng, cfg);
    case Mode::Exotic:
      return trial_exotic(rng, cfg);
    default:
      throw ConfigError("run_trial: not a concrete mode");
  }
}

ModeSection run_section(Mode m, const TrialConfig& cfg) {
  ModeSection sec;
  sec.mode = mode_name(m);
  sec.n = section_block_size(m, cfg);
  check_fixed_family(m, cfg, sec.n);
  sec.trials = cfg.zeta ? 1 : cfg.trials;

  std::string name = sec.mode;
  SplitMix64 rng(cfg.seed ^ fnv1a(name.data(), name.size()));

  for (int t = 0; t < sec.trials; ++t) {
    TrialRecord rec;
    rec.trial = t;
    try {
      for (int attempt = 0;; ++attempt) {
        try {
          rec.residuals = run_trial(m, rng, cfg, sec.n, rec.extra);
          break;
        } catch (const Error& e) {
          if (cfg.zeta || attempt >= 99 || !resamplable(e)) throw;
        }
      }
      rec.pass = true;
      for (const auto& [key, value] : rec.residuals)
        if (!(value <= cfg.tol)) rec.pass = false;
    } catch (const InconsistentRatio& e) {
      rec.pass = false;
      rec.error = e.what();
      rec.residuals["deviation"] = e.deviation;
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      rec.pass = false;
      rec.error = e.what();
    }
    for (const auto& [key, value] : rec.residuals) {
      auto it = sec.max_residuals.find(key);
      if (it == sec.max_residuals.end())
        sec.max_residuals[key] = value;
      else
        it->second = std::max(it->second, value);
    }
    if (rec.pass) ++sec.passed;
    sec.records.push_back(std::move(rec));
  }
  sec.pass = sec.passed == sec.trials;
  return sec;
}

}  // namespace

Mode parse_mode(const std::string& name) {
  for (const auto& [mode, n] : mode_names())
    if (name == n) return mode;
  std::string valid;
  for (const auto& [mode, n] : mode_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ConfigError("unknown mode \"" + name + "\" (valid: " + valid + ")");
}

std::string mode_name(Mode m) {
  for (const auto& [mode, n] : mode_names())
    if (mode == m) return n;
  throw ConfigError("mode_name: unknown mode");
}

bool Report::pass() const {
  if (sections.empty()) return false;
  for (const auto& sec : sections)
    if (!sec.pass) return false;
  return true;
}

Report run(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be positive");
  if (cfg.n < 1 || cfg.n > 16) throw ConfigError("n must be in 1..16");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.zeta && cfg.mode == Mode::All)
    throw ConfigError("a fixed family needs a specific mode, not \"all\"");

  Report rep;
  rep.seed = cfg.seed;
  rep.tol = cfg.tol;
  rep.timestamp = iso_now();
  if (cfg.mode == Mode::All) {
    for (Mode m : {Mode::DirectSum, Mode::Orthogonal, Mode::Isotropic, Mode::GrassmannPentagon,
                   Mode::Kashaev, Mode::Exotic})
      rep.sections.push_back(run_section(m, cfg));
  } else {
    rep.sections.push_back(run_section(cfg.mode, cfg));
  }
  return rep;
}

nlohmann::json report_json(const Report& r) {
  using nlohmann::json;
  json modes = json::array();
  for (const ModeSection& sec : r.sections) {
    json recs = json::array();
    for (const TrialRecord& rec : sec.records) {
      json jr{{"trial", rec.trial}, {"status", rec.pass ? "pass" : "fail"}};
      json res = json::object();
      for (const auto& [key, value] : rec.residuals) res[key] = value;
      jr["residuals"] = std::move(res);
      if (!rec.error.empty()) jr["error"] = rec.error;
      if (rec.extra.is_object())
        for (const auto& [key, value] : rec.extra.items()) jr[key] = value;
      recs.push_back(std::move(jr));
    }
    json maxes = json::object();
    for (const auto& [key, value] : sec.max_residuals) maxes[key] = value;
    modes.push_back(json{{"mode", sec.mode},
                         {"n", sec.n},
                         {"trials", sec.trials},
                         {"passed", sec.passed},
                         {"status", sec.pass ? "pass" : "fail"},
                         {"max_residuals", std::move(maxes)},
                         {"trial_records", std::move(recs)}});
  }
  return nlohmann::json{{"rng", r.rng},         {"seed", r.seed},
                        {"tolerance", r.tol},   {"timestamp", r.timestamp},
                        {"status", r.pass() ? "pass" : "fail"},
                        {"modes", std::move(modes)}};
}

void save_report(const std::string& path, const Report& r) {
  write_text_file(path, report_json(r).dump(2) + "\n");
}

nlohmann::json gauss_weight_json(const GaussWeight& w) {
  using nlohmann::json;
  auto face = [](const Triple& t) {
    return std::to_string(t.i) + std::to_string(t.j) + std::to_string(t.k);
  };
  json b = json::array();
  for (const auto& row : w.b)
    b.push_back(json::array({complex_json(row[0]), complex_json(row[1])}));
  return json{{"tet", w.faces.tet},
              {"x1", face(w.faces.x1)},
              {"x2", face(w.faces.x2)},
              {"y1", face(w.faces.y1)},
              {"y2", face(w.faces.y2)},
              {"a", complex_json(w.a)},
              {"b", std::move(b)},
              {"c", complex_json(w.c)},
              {"delta", complex_json(w.delta())}};
}

ZetaFamily random_zeta(SplitMix64& rng, int n) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::array<CMatrix, 5> mats;
    for (auto& m : mats) {
      CMatrix raw(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) raw(i, j) = rng.next_disc();
      m = (raw + raw.transpose()) / 2.0;
    }
    try {
      return make_zeta_family(std::move(mats), true, 1e6);
    } catch (const SingularMatrix&) {
    }
  }
  throw DegenerateParameters("random_zeta: sampler failed to find a usable family");
}

std::array<double, 5> random_decreasing(SplitMix64& rng, double min_gap) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::array<double, 5> z;
    for (double& v : z) v = rng.next_double();
    std::sort(z.begin(), z.end(), std::greater<>());
    bool ok = true;
    for (int i = 0; i + 1 < 5; ++i)
      if (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(i + 1)] < min_gap)
        ok = false;
    if (ok) return z;
  }
  throw DegenerateParameters("random_decreasing: sampler failed");
}

LmFamily random_lm(SplitMix64& rng) {
  const auto& table = flip_table();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::array<double, 5> lambda = random_decreasing(rng);
    LmFamily p;
    for (std::size_t v = 0; v < 5; ++v) p[v] = {lambda[v], rng.next_signed()};
    bool ok = true;
    for (const FlipInfo& fi : table) {
      LmFamily sub = p;
      for (std::size_t s = 0; s < 4; ++s)
        sub[s] = p[static_cast<std::size_t>(fi.tet[s] - 1)];
      if (std::abs(mu_coupling(sub)) < 1e-3) ok = false;
    }
    if (ok) return p;
  }
  throw DegenerateParameters("random_lm: sampler failed");
}

GaussWeight random_weight(SplitMix64& rng, const TetWiring& faces) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Complex a = rng.next_disc();
    Complex c = rng.next_disc();
    std::array<std::array<Complex, 2>, 2> b;
    for (auto& row : b)
      for (Complex& v : row) v = rng.next_disc();
    Complex delta = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    if (std::abs(delta) < 0.2) continue;
    return make_gauss_weight(a, b, c, faces);
  }
  throw DegenerateParameters("random_weight: sampler failed");
}

}  // namespace pentagon
