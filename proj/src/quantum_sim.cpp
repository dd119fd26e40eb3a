#include "slitlogic/quantum_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>

#include "slitlogic/error.hpp"

namespace slitlogic {
namespace {

constexpr double kNormTolerance = 1e-12;

std::vector<Amplitude> amplitudes_at(const SlitConfig& config, double x) {
  std::vector<Amplitude> a(config.n());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = amplitude(config, i + 1, x);
  return a;
}

double intensity(std::span<const Amplitude> a, SlitSet subset, const Model& model) {
  if (model.kind() == Model::Kind::decohered) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if ((subset >> i) & 1u) sum += std::norm(a[i]);
    }
    return sum;
  }
  Amplitude total{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((subset >> i) & 1u) total += a[i];
  }
  const double born = std::norm(total);
  if (model.kind() == Model::Kind::born) return born;
  return born * (1.0 + model.epsilon() * std::abs(total));
}

void check_subset(const SlitConfig& config, SlitSet subset) {
  if (subset == 0) throw ArgumentError("subset_probability: empty subset");
  if (static_cast<std::size_t>(std::bit_width(subset)) > config.n()) {
    throw ArgumentError("subset_probability: subset names a slit beyond " + std::to_string(config.n()));
  }
}

}  // namespace

SlitConfig::SlitConfig(std::vector<Amplitude> amplitudes, std::vector<double> offsets, double wavelength,
                       double screen_distance)
    : amplitudes_(std::move(amplitudes)),
      offsets_(std::move(offsets)),
      wavelength_(wavelength),
      screen_distance_(screen_distance) {
  if (amplitudes_.empty()) throw ArgumentError("slit config needs at least one slit");
  if (amplitudes_.size() > kMaxSlits) {
    throw ArgumentError("slit config has more than " + std::to_string(kMaxSlits) + " slits");
  }
  if (offsets_.size() != amplitudes_.size()) {
    throw ArgumentError("slit config has " + std::to_string(amplitudes_.size()) + " amplitudes but " +
                        std::to_string(offsets_.size()) + " offsets");
  }
  if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_)) throw ArgumentError("wavelength must be > 0");
  if (!(screen_distance_ > 0.0) || !std::isfinite(screen_distance_)) {
    throw ArgumentError("screen distance must be > 0");
  }
  double norm = 0.0;
  for (const Amplitude& c : amplitudes_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ArgumentError("amplitude is not finite");
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw ArgumentError("amplitudes are not normalized: sum |c_i|^2 = " + format_real(norm));
  }
  std::set<double> distinct;
  for (double d : offsets_) {
    if (!std::isfinite(d)) throw ArgumentError("slit offset is not finite");
    if (!distinct.insert(d).second) throw ArgumentError("slit offsets must be pairwise distinct");
  }
}

DetectorGrid::DetectorGrid(std::vector<double> positions) : positions_(std::move(positions)) {
  if (positions_.empty()) throw ArgumentError("detector grid is empty");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) throw ArgumentError("detector position is not finite");
    if (i > 0 && !(positions_[i] > positions_[i - 1])) {
      throw ArgumentError("detector positions must be strictly increasing");
    }
  }
}

DetectorGrid DetectorGrid::linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw ArgumentError("grid needs at least one point");
  if (count == 1) return DetectorGrid({start});
  std::vector<double> xs(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) xs[i] = start + step * static_cast<double>(i);
  xs.back() = stop;
  return DetectorGrid(std::move(xs));
}

Model Model::nonquantum(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw ArgumentError("nonquantum epsilon must be finite and >= 0");
  }
  return Model(Kind::nonquantum, epsilon);
}

std::string Model::name() const {
  switch (kind_) {
    case Kind::born: return "born";
    case Kind::decohered: return "decohered";
    case Kind::nonquantum: return "nonquantum";
  }
  return "";
}

Amplitude amplitude(const SlitConfig& config, std::size_t slit, double x) {
  if (slit < 1 || slit > config.n()) {
    throw ArgumentError("slit index " + std::to_string(slit) + " outside 1.." + std::to_string(config.n()));
  }
  if (!std::isfinite(x)) throw ArgumentError("screen position is not finite");
  const double phase = 2.0 * std::numbers::pi * config.offsets()[slit - 1] * x /
                       (config.wavelength() * config.screen_distance());
  return config.amplitudes()[slit - 1] * std::polar(1.0, phase);
}

double subset_probability(const SlitConfig& config, SlitSet subset, double x, const Model& model) {
  check_subset(config, subset);
  return intensity(amplitudes_at(config, x), subset, model);
}

std::vector<PatternPoint> generate(const SlitConfig& config, const DetectorGrid& grid, const Model& model,
                                   std::size_t simulation_cap) {
  if (config.n() > simulation_cap) {
    throw ArgumentError("generate: " + std::to_string(config.n()) + " slits exceeds the simulation cap of " +
                        std::to_string(simulation_cap));
  }
  std::vector<PatternPoint> pattern;
  pattern.reserve(grid.size());
  for (double x : grid.positions()) {
    const std::vector<Amplitude> a = amplitudes_at(config, x);
    pattern.push_back({x, SubsetProbabilities::from_function(
                              config.n(), [&](SlitSet s) { return intensity(a, s, model); })});
  }
  return pattern;
}

ScanReport scan_report(const SlitConfig& config, const DetectorGrid& grid, const Model& model,
                       std::size_t simulation_cap) {
  if (config.n() < 2) throw ArgumentError("scan_report needs at least two slits");
  ScanReport scan;
  scan.model = model.name();
  scan.n = config.n();
  for (PatternPoint& point : generate(config, grid, model, simulation_cap)) {
    InterferenceReport r = hierarchy_report(point.probabilities);
    for (const auto& [k, v] : r.sorkin_values) {
      scan.max_abs_sorkin[k] = std::max(scan.max_abs_sorkin[k], std::abs(v));
    }
    scan.max_abs_pairwise_residual = std::max(scan.max_abs_pairwise_residual, std::abs(r.pairwise_residual));
    scan.max_abs_decohered_residual =
        std::max(scan.max_abs_decohered_residual, std::abs(r.decohered_residual));
    scan.points.push_back({point.x, std::move(r)});
  }
  return scan;
}

SlitConfig slit_config_from_json(const nlohmann::ordered_json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto& amps = doc.at("amplitudes");
    const auto& offs = doc.at("offsets");
    if (!amps.is_array() || amps.size() != n) throw DataError("'amplitudes' must list n [re, im] pairs");
    if (!offs.is_array() || offs.size() != n) throw DataError("'offsets' must list n numbers");
    std::vector<Amplitude> amplitudes;
    for (const auto& pair : amps) {
      if (!pair.is_array() || pair.size() != 2) throw DataError("each amplitude must be [re, im]");
      amplitudes.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (doc.value("normalize", false)) {
      double norm = 0.0;
      for (const Amplitude& c : amplitudes) norm += std::norm(c);
      if (!(norm > 0.0)) throw DataError("cannot normalize all-zero amplitudes");
      for (Amplitude& c : amplitudes) c /= std::sqrt(norm);
    }
    return SlitConfig(std::move(amplitudes), offs.get<std::vector<double>>(), doc.at("wavelength").get<double>(),
                      doc.at("screen_distance").get<double>());
  } catch (const nlohmann::ordered_json::exception& e) {
    throw DataError(std::string("slit config: ") + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(std::string("slit config: ") + e.what());
  }
}

SlitConfig read_slit_config(std::istream& in) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw DataError(std::string("slit config: ") + e.what());
  }
  return slit_config_from_json(doc);
}

nlohmann::ordered_json to_json(const SlitConfig& config) {
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (const Amplitude& c : config.amplitudes()) amps.push_back({c.real(), c.imag()});
  return {{"n", config.n()},
          {"wavelength", config.wavelength()},
          {"screen_distance", config.screen_distance()},
          {"amplitudes", amps},
          {"offsets", std::vector<double>(config.offsets().begin(), config.offsets().end())}};
}

void write_pattern(std::ostream& out, std::span<const PatternPoint> pattern) {
  out << "x,subset,P\n";
  for (const PatternPoint& point : pattern) {
    const std::size_t n = point.probabilities.n();
    std::vector<SlitSet> sets;
    for (SlitSet s = 1; s < (SlitSet{1} << n); ++s) sets.push_back(s);
    std::stable_sort(sets.begin(), sets.end(),
                     [](SlitSet a, SlitSet b) { return std::popcount(a) < std::popcount(b); });
    for (SlitSet s : sets) {
      out << format_real(point.x) << ',' << slit_label(s) << ',' << format_real(point.probabilities.at(s))
          << '\n';
    }
  }
}

std::string to_text(const ScanReport& report, bool per_point) {
  std::string s = "model=" + report.model + "\nn=" + std::to_string(report.n) +
                  "\npoints=" + std::to_string(report.points.size()) + "\n";
  for (const auto& [k, v] : report.max_abs_sorkin) {
    s += "max_abs_I" + std::to_string(k) + "=" + format_real(v) + "\n";
  }
  s += "max_abs_pairwise_residual=" + format_real(report.max_abs_pairwise_residual) + "\n";
  s += "max_abs_decohered_residual=" + format_real(report.max_abs_decohered_residual) + "\n";
  if (per_point) {
    for (const PointReport& p : report.points) {
      s += "x=" + format_real(p.x);
      for (const auto& [k, v] : p.report.sorkin_values) s += " I" + std::to_string(k) + "=" + format_real(v);
      s += " pairwise_residual=" + format_real(p.report.pairwise_residual) +
           " decohered_residual=" + format_real(p.report.decohered_residual) + "\n";
    }
  }
  return s;
}

nlohmann::ordered_json to_json(const ScanReport& report, bool per_point) {
  nlohmann::ordered_json maxima = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.max_abs_sorkin) maxima[std::to_string(k)] = v;
  nlohmann::ordered_json j = {{"model", report.model},
                              {"n", report.n},
                              {"points", report.points.size()},
                              {"max_abs_sorkin", maxima},
                              {"max_abs_pairwise_residual", report.max_abs_pairwise_residual},
                              {"max_abs_decohered_residual", report.max_abs_decohered_residual}};
  if (per_point) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const PointReport& p : report.points) {
      nlohmann::ordered_json entry = to_json(p.report);
      entry["x"] = p.x;
      points.push_back(std::move(entry));
    }
    j["per_point"] = std::move(points);
  }
  return j;
}

}  // namespace slitlogic
