#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pentagon/exotic.hpp"
#include "pentagon/rng.hpp"
#include "pentagon/weights.hpp"

namespace pentagon {

enum class Mode { DirectSum, Orthogonal, Isotropic, GrassmannPentagon, Kashaev, Exotic, All };

Mode parse_mode(const std::string& name);  // ConfigError on unknown names
std::string mode_name(Mode m);

struct TrialConfig {
  Mode mode = Mode::All;
  int n = 2;                        // block size where the mode allows a choice
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;                // pass threshold on every reported residual
  std::optional<ZetaFamily> zeta;   // fixed input family instead of sampling
};

struct TrialRecord {
  int trial = 0;
  bool pass = false;
  std::map<std::string, double> residuals;
  std::string error;     // nonempty when the trial aborted with an exception
  nlohmann::json extra;  // mode-specific recorded values, reported but never thresholded
};

struct ModeSection {
  std::string mode;
  int n = 0;
  int trials = 0;
  int passed = 0;
  bool pass = false;
  std::map<std::string, double> max_residuals;
  std::vector<TrialRecord> records;
};

struct Report {
  std::string rng = "splitmix64";
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string timestamp;  // the one non-deterministic field
  std::vector<ModeSection> sections;

  bool pass() const;
};

// Runs the configured verification mode(s). Each section reseeds its generator
// from (seed, mode name), so a combined run reproduces the standalone ones.
Report run(const TrialConfig& cfg);

nlohmann::json report_json(const Report& r);
void save_report(const std::string& path, const Report& r);

// Per-tetrahedron parameters of a Gaussian weight (faces, coefficients, delta).
nlohmann::json gauss_weight_json(const GaussWeight& w);

// --- samplers (deterministic given the generator state) ----------------------------

// Entries i.i.d. in the complex unit disc, symmetrized; the family is resampled
// until every pair difference passes a 1e6 condition estimate.
ZetaFamily random_zeta(SplitMix64& rng, int n);

// Five reals in (0, 1), sorted decreasing, adjacent gaps at least min_gap.
std::array<double, 5> random_decreasing(SplitMix64& rng, double min_gap = 0.05);

// lambda decreasing with gaps, mu uniform in [-1, 1]; resampled until every
// tetrahedron's mu_coupling stays away from zero.
LmFamily random_lm(SplitMix64& rng);

// Coefficients in the unit disc, resampled until |delta| >= 0.2.
GaussWeight random_weight(SplitMix64& rng, const TetWiring& faces);

}  // namespace pentagon
