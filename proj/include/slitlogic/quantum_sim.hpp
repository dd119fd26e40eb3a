#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "slitlogic/interference.hpp"

namespace slitlogic {

using Amplitude = std::complex<double>;

/// Largest slit count `generate` accepts; output grows as 2^n per point.
inline constexpr std::size_t kDefaultSimulationCap = 10;

/// N point slits with base amplitudes c_i at offsets d_i, far-field screen at
/// distance L, wavelength lambda. sum |c_i|^2 = 1 within 1e-12.
class SlitConfig {
 public:
  SlitConfig(std::vector<Amplitude> amplitudes, std::vector<double> offsets, double wavelength,
             double screen_distance);

  std::size_t n() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<const double> offsets() const noexcept { return offsets_; }
  double wavelength() const noexcept { return wavelength_; }
  double screen_distance() const noexcept { return screen_distance_; }

 private:
  std::vector<Amplitude> amplitudes_;
  std::vector<double> offsets_;
  double wavelength_;
  double screen_distance_;
};

/// Screen positions, strictly increasing.
class DetectorGrid {
 public:
  explicit DetectorGrid(std::vector<double> positions);
  /// `count` evenly spaced points from start to stop inclusive.
  static DetectorGrid linspace(double start, double stop, std::size_t count);

  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }

 private:
  std::vector<double> positions_;
};

/// How subset intensities are formed from the slit amplitudes.
class Model {
 public:
  enum class Kind { born, decohered, nonquantum };

  static Model born() { return Model(Kind::born, 0.0); }
  static Model decohered() { return Model(Kind::decohered, 0.0); }
  /// |A|^2 (1 + epsilon |A|); epsilon must be finite and >= 0.
  static Model nonquantum(double epsilon);

  Kind kind() const noexcept { return kind_; }
  double epsilon() const noexcept { return epsilon_; }
  std::string name() const;

 private:
  Model(Kind kind, double epsilon) : kind_(kind), epsilon_(epsilon) {}

  Kind kind_;
  double epsilon_;
};

/// c_i exp(2 pi i d_i x / (lambda L)) for 1-based `slit`.
Amplitude amplitude(const SlitConfig& config, std::size_t slit, double x);

/// Intensity at x with only the slits in `subset` open.
double subset_probability(const SlitConfig& config, SlitSet subset, double x, const Model& model);

struct PatternPoint {
  double x;
  SubsetProbabilities probabilities;
};

std::vector<PatternPoint> generate(const SlitConfig& config, const DetectorGrid& grid, const Model& model,
                                   std::size_t simulation_cap = kDefaultSimulationCap);

struct PointReport {
  double x;
  InterferenceReport report;
};

struct ScanReport {
  std::string model;
  std::size_t n = 0;
  std::vector<PointReport> points;
  /// K -> grid max of |I_K| (per-point values are already maxima over K-subsets).
  std::map<int, double> max_abs_sorkin;
  double max_abs_pairwise_residual = 0.0;
  double max_abs_decohered_residual = 0.0;
};

ScanReport scan_report(const SlitConfig& config, const DetectorGrid& grid, const Model& model,
                       std::size_t simulation_cap = kDefaultSimulationCap);

/// Config document:
///   {"n": 3, "wavelength": 5e-7, "screen_distance": 1.0,
///    "amplitudes": [[re, im], ...], "offsets": [d1, ...], "normalize": false}
/// With "normalize": true the amplitudes are rescaled to unit norm first.
SlitConfig slit_config_from_json(const nlohmann::ordered_json& doc);
SlitConfig read_slit_config(std::istream& in);
nlohmann::ordered_json to_json(const SlitConfig& config);

/// `x,subset,P` rows for every point and nonempty subset.
void write_pattern(std::ostream& out, std::span<const PatternPoint> pattern);

/// Grid maxima as key=value lines; per-point reports follow when requested.
std::string to_text(const ScanReport& report, bool per_point = false);
nlohmann::ordered_json to_json(const ScanReport& report, bool per_point = false);

}  // namespace slitlogic
