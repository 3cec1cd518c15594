#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/geometry.hpp"
#include "hardy/ineq.hpp"
#include "hardy/sharp.hpp"
#include "hardy/types.hpp"

namespace hardy {

struct Resolution {
  int nx = 128;
  int ny = 128;
};

struct CorpusConfig {
  std::uint64_t seed = 1;
  int count = 100;
  int modes = 6;
  Scalar h_cut_fraction = 0.5;
};

struct VerifyConfig {
  std::vector<DistanceVariant> variants{DistanceVariant::Eps, DistanceVariant::Rho};
  int sample_points = 20;
  // bound assertions use 1 + slack_scale / min(nx, ny): 5% at 128, 10% at 64
  Scalar slack_scale = 6.4;
};

struct EstimateConfig {
  std::vector<QuotientKind> quotients{QuotientKind::Friedrichs, QuotientKind::HardyEps,
                                      QuotientKind::HardyRho};
  Scalar tol_p2 = 1e-8;
  Scalar tol_general = 1e-6;
  int max_iter = 200000;
};

struct SweepConfig {
  std::vector<Scalar> delta;
  std::vector<int> N;
  std::vector<Scalar> alpha;
};

struct RunConfig {
  GeometryConfig geometry;
  std::vector<WeightSpec> weights;
  std::vector<Resolution> resolutions{{128, 128}};
  CorpusConfig corpus;
  Scalar c_hl = 4.0;  // empirical Hardy-Littlewood envelope feeding C2/alpha_max
  VerifyConfig verify;
  EstimateConfig estimate;
  SweepConfig sweep;
  std::string output_dir = "reports";

  void validate() const;
};

RunConfig default_config();

// Strict JSON loading: unknown keys and malformed values raise ConfigError
// naming the offending key.
RunConfig parse_config_string(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Canonical (sorted-key) JSON image of the effective configuration.
std::string dump_config_json(const RunConfig& cfg);

// FNV-1a hash of the canonical image; every report row carries it.
std::string config_hash(const RunConfig& cfg);

const char* to_string(QuotientKind kind);
const char* to_string(DistanceVariant variant);
const char* to_string(EstimateMethod method);

}  // namespace hardy
