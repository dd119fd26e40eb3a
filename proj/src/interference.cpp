#include "slitlogic/interference.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "slitlogic/error.hpp"

namespace slitlogic {
namespace {

void check_slit_count(std::size_t n) {
  if (n < 1 || n > kMaxSlits) {
    throw ArgumentError("slit count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxSlits));
  }
}

void check_value(SlitSet s, double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DataError("probability for subset " + slit_label(s) + " must be finite and >= 0, got " +
                    format_real(v));
  }
}

std::vector<SlitSet> subsets_by_size(std::size_t n) {
  std::vector<SlitSet> sets;
  for (SlitSet s = 1; s < (SlitSet{1} << n); ++s) sets.push_back(s);
  std::stable_sort(sets.begin(), sets.end(),
                   [](SlitSet a, SlitSet b) { return std::popcount(a) < std::popcount(b); });
  return sets;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void require_n_at_least_two(const SubsetProbabilities& p, const char* op) {
  if (p.n() < 2) throw ArgumentError(std::string(op) + " needs at least two slits");
}

}  // namespace

std::string slit_label(SlitSet s) {
  std::string label;
  for (std::size_t i = 0; i < 32 && (s >> i) != 0; ++i) {
    if ((s >> i) & 1u) label += static_cast<char>('A' + i);
  }
  return label;
}

SlitSet parse_slit_label(const std::string& label) {
  if (label.empty()) throw DataError("empty subset label");
  SlitSet s = 0;
  for (char c : label) {
    if (c < 'A' || c > 'Z') throw DataError("bad slit label '" + std::string(1, c) + "' in " + label);
    const SlitSet bit = SlitSet{1} << (c - 'A');
    if (s & bit) throw DataError("slit " + std::string(1, c) + " repeated in " + label);
    s |= bit;
  }
  return s;
}

SubsetProbabilities::SubsetProbabilities(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {}

SubsetProbabilities SubsetProbabilities::from_map(std::size_t n, const std::map<SlitSet, double>& values) {
  check_slit_count(n);
  std::vector<double> dense(std::size_t{1} << n, 0.0);
  for (const auto& [s, v] : values) {
    if (s == 0 || s >= dense.size()) {
      throw DataError("subset key " + std::to_string(s) + " outside the nonempty subsets of " +
                      std::to_string(n) + " slits");
    }
  }
  for (SlitSet s = 1; s < dense.size(); ++s) {
    auto it = values.find(s);
    if (it == values.end()) throw DataError("missing subset key " + slit_label(s));
    check_value(s, it->second);
    dense[s] = it->second;
  }
  return SubsetProbabilities(n, std::move(dense));
}

SubsetProbabilities SubsetProbabilities::from_function(std::size_t n,
                                                       const std::function<double(SlitSet)>& f) {
  check_slit_count(n);
  std::vector<double> dense(std::size_t{1} << n, 0.0);
  for (SlitSet s = 1; s < dense.size(); ++s) {
    dense[s] = f(s);
    check_value(s, dense[s]);
  }
  return SubsetProbabilities(n, std::move(dense));
}

double SubsetProbabilities::at(SlitSet s) const {
  if (s == 0 || s > full_set()) {
    throw ArgumentError("subset " + std::to_string(s) + " is empty or outside 1.." + std::to_string(n_));
  }
  return values_[s];
}

double sorkin(SlitSet subset, const SubsetProbabilities& p) {
  if (subset == 0 || subset > p.full_set()) {
    throw ArgumentError("sorkin: subset must be nonempty and within 1.." + std::to_string(p.n()));
  }
  const int size = std::popcount(subset);
  double sum = 0.0;
  for (SlitSet t = subset; t != 0; t = (t - 1) & subset) {
    const double v = p.at(t);
    sum += ((size - std::popcount(t)) % 2 == 0) ? v : -v;
  }
  return sum;
}

double pairwise_residual(const SubsetProbabilities& p) {
  require_n_at_least_two(p, "pairwise_residual");
  const std::size_t n = p.n();
  double pairs = 0.0;
  double singles = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    singles += p.at(SlitSet{1} << i);
    for (std::size_t j = i + 1; j < n; ++j) pairs += p.at((SlitSet{1} << i) | (SlitSet{1} << j));
  }
  return p.at(p.full_set()) - pairs + static_cast<double>(n - 2) * singles;
}

double decohered_residual(const SubsetProbabilities& p) {
  require_n_at_least_two(p, "decohered_residual");
  double singles = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) singles += p.at(SlitSet{1} << i);
  return p.at(p.full_set()) - singles;
}

InterferenceReport hierarchy_report(const SubsetProbabilities& p) {
  require_n_at_least_two(p, "hierarchy_report");
  InterferenceReport report;
  report.n = p.n();
  const int n = static_cast<int>(p.n());
  for (int k = 2; k < n; ++k) report.sorkin_values[k] = 0.0;
  for (SlitSet s = 1; s < p.full_set(); ++s) {
    const int k = std::popcount(s);
    if (k < 2) continue;
    report.sorkin_values[k] = std::max(report.sorkin_values[k], std::abs(sorkin(s, p)));
  }
  report.sorkin_values[n] = sorkin(p.full_set(), p);
  report.pairwise_residual = pairwise_residual(p);
  report.decohered_residual = decohered_residual(p);
  return report;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_subset_probabilities(std::ostream& out, const SubsetProbabilities& p) {
  out << "subset,P\n";
  for (SlitSet s : subsets_by_size(p.n())) out << slit_label(s) << ',' << format_real(p.at(s)) << '\n';
}

SubsetProbabilities read_subset_probabilities(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::map<SlitSet, double> values;
  SlitSet seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "subset,P") throw DataError("line 1: expected header 'subset,P'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataError("line " + std::to_string(line_no) + ": expected 'subset,P'");
    }
    const std::string label = trim(line.substr(0, comma));
    const std::string number = trim(line.substr(comma + 1));
    const SlitSet s = parse_slit_label(label);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
    if (ec != std::errc() || ptr != number.data() + number.size()) {
      throw DataError("line " + std::to_string(line_no) + ": bad probability '" + number + "'");
    }
    if (!values.emplace(s, v).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate subset " + label);
    }
    seen |= s;
  }
  if (!header) throw DataError("empty subset table");
  if (seen == 0) throw DataError("subset table has no rows");
  const auto n = static_cast<std::size_t>(std::bit_width(seen));
  return SubsetProbabilities::from_map(n, values);
}

std::string to_text(const InterferenceReport& report) {
  std::string s = "n=" + std::to_string(report.n) + "\n";
  for (const auto& [k, v] : report.sorkin_values) s += "I" + std::to_string(k) + "=" + format_real(v) + "\n";
  s += "pairwise_residual=" + format_real(report.pairwise_residual) + "\n";
  s += "decohered_residual=" + format_real(report.decohered_residual) + "\n";
  return s;
}

nlohmann::ordered_json to_json(const InterferenceReport& report) {
  nlohmann::ordered_json sorkin_values = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.sorkin_values) sorkin_values[std::to_string(k)] = v;
  return {{"n", report.n},
          {"sorkin_values", sorkin_values},
          {"pairwise_residual", report.pairwise_residual},
          {"decohered_residual", report.decohered_residual}};
}

}  // namespace slitlogic
