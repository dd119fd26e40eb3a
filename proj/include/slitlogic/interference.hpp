#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace slitlogic {

/// Set of slits; bit i-1 set <=> slit i open.
using SlitSet = std::uint32_t;

/// Largest slit count a subset table may hold.
inline constexpr std::size_t kMaxSlits = 20;

/// "A", "AC", ... for a slit set (slit 1 is A).
std::string slit_label(SlitSet s);
/// Inverse of slit_label; letters may come in any order but not repeat.
SlitSet parse_slit_label(const std::string& label);

/// Probability P_S at one detector position for every nonempty set S of open
/// slits. P of the empty set is 0 and is not stored.
class SubsetProbabilities {
 public:
  /// Every nonempty subset of {1..n} must be present.
  static SubsetProbabilities from_map(std::size_t n, const std::map<SlitSet, double>& values);
  static SubsetProbabilities from_function(std::size_t n, const std::function<double(SlitSet)>& f);

  std::size_t n() const noexcept { return n_; }
  SlitSet full_set() const noexcept { return static_cast<SlitSet>((std::size_t{1} << n_) - 1); }
  /// P_S; throws for the empty set or slits outside 1..n.
  double at(SlitSet s) const;

 private:
  SubsetProbabilities(std::size_t n, std::vector<double> values);

  std::size_t n_;
  std::vector<double> values_;  // indexed by SlitSet, entry 0 unused
};

/// Alternating inclusion-exclusion sum over the nonempty subsets T of `subset`:
/// sum (-1)^(|subset|-|T|) P_T.
double sorkin(SlitSet subset, const SubsetProbabilities& p);

/// P_full - sum_{i<j} P_ij + (n-2) sum_i P_i. Requires n >= 2.
double pairwise_residual(const SubsetProbabilities& p);

/// P_full - sum_i P_i. Requires n >= 2.
double decohered_residual(const SubsetProbabilities& p);

struct InterferenceReport {
  std::size_t n = 0;
  /// K -> max |I_K| over K-subsets for K < n; the signed I_n on the full set for K = n.
  std::map<int, double> sorkin_values;
  double pairwise_residual = 0.0;
  double decohered_residual = 0.0;
};

InterferenceReport hierarchy_report(const SubsetProbabilities& p);

/// 17 significant digits, round-trip exact for doubles.
std::string format_real(double value);

/// `subset,P` table, one row per nonempty subset ordered by size then slits.
void write_subset_probabilities(std::ostream& out, const SubsetProbabilities& p);
/// Reads the table written above; the slit count is the highest label present.
SubsetProbabilities read_subset_probabilities(std::istream& in);

/// key=value lines in fixed order: n, I2..In, pairwise_residual, decohered_residual.
std::string to_text(const InterferenceReport& report);
nlohmann::ordered_json to_json(const InterferenceReport& report);

}  // namespace slitlogic
