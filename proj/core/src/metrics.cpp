#include "dynoco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dynoco/csv.hpp"
#include "dynoco/errors.hpp"

namespace dynoco {

void RegretLedger::append(RoundRecord record) {
  if (record.t != records_.size() + 1) {
    detail::throw_contract("RegretLedger: expected round " + std::to_string(records_.size() + 1) + ", got " +
                           std::to_string(record.t));
  }
  if (!std::isfinite(record.loss) || !std::isfinite(record.comparator_loss)) {
    detail::throw_degenerate("RegretLedger: non-finite loss at round " + std::to_string(record.t));
  }
  if (record.comparator.empty() || record.gradients.empty()) {
    detail::throw_contract("RegretLedger: record needs a comparator and at least one gradient");
  }
  for (const auto& g : record.gradients) require_same_dim(g, record.comparator, "RegretLedger::append");
  if (!records_.empty()) {
    require_same_dim(record.comparator, records_.front().comparator, "RegretLedger::append");
    if (record.gradients.size() != records_.front().gradients.size()) {
      detail::throw_contract("RegretLedger: gradients per round changed mid-run");
    }
  }
  records_.push_back(std::move(record));
}

std::size_t RegretLedger::dimension() const noexcept {
  return records_.empty() ? 0 : records_.front().comparator.size();
}

std::size_t RegretLedger::inner_count() const noexcept {
  return records_.empty() ? 0 : records_.front().gradients.size();
}

RegretLedger RegretLedger::prefix(std::size_t n) const {
  if (n > records_.size()) detail::throw_contract("RegretLedger::prefix: n exceeds ledger length");
  RegretLedger out;
  out.records_.assign(records_.begin(), records_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::vector<DecisionVector> RegretLedger::comparators() const {
  std::vector<DecisionVector> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.comparator);
  return out;
}

DecisionVector RegretLedger::accumulator(std::size_t inner, std::size_t rounds) const {
  if (rounds < 1 || rounds > records_.size()) detail::throw_contract("accumulator: rounds out of range");
  if (inner >= inner_count()) detail::throw_contract("accumulator: inner slot out of range");
  std::vector<double> v(dimension(), 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto& g = records_[t].gradients[inner];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g[i] * g[i];
  }
  return DecisionVector(std::move(v));
}

DecisionVector RegretLedger::max_accumulator(std::size_t rounds) const {
  std::vector<double> best(dimension(), 0.0);
  for (std::size_t j = 0; j < inner_count(); ++j) {
    const DecisionVector v = accumulator(j, rounds);
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], v[i]);
  }
  return DecisionVector(std::move(best));
}

double dynamic_regret(const RegretLedger& ledger) {
  if (ledger.empty()) detail::throw_contract("dynamic_regret: empty ledger");
  double acc = 0.0;
  for (const auto& r : ledger.records()) acc += r.loss - r.comparator_loss;
  return acc;
}

std::vector<double> cumulative_dynamic_regret(const RegretLedger& ledger) {
  std::vector<double> out;
  out.reserve(ledger.size());
  double acc = 0.0;
  for (const auto& r : ledger.records()) {
    acc += r.loss - r.comparator_loss;
    out.push_back(acc);
  }
  return out;
}

double static_regret(const RegretLedger& ledger, std::span<const double> comparator_losses) {
  if (comparator_losses.size() != ledger.size()) detail::throw_contract("static_regret: length mismatch");
  double acc = 0.0;
  for (std::size_t t = 0; t < ledger.size(); ++t) acc += ledger[t].loss - comparator_losses[t];
  return acc;
}

namespace {

template <class Increment>
CoordinateTotals per_coordinate_variation(std::span<const DecisionVector> seq, Increment inc) {
  CoordinateTotals out;
  if (seq.empty()) return out;
  const std::size_t p = seq.front().size();
  out.per_coordinate.assign(p, 0.0);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    require_same_dim(seq[t], seq.front(), "path length");
    for (std::size_t i = 0; i < p; ++i) out.per_coordinate[i] += inc(seq[t][i] - seq[t - 1][i]);
  }
  for (double c : out.per_coordinate) out.total += c;
  return out;
}

CoordinateTotals history_norms(const RegretLedger& ledger, std::size_t inner) {
  CoordinateTotals out;
  const DecisionVector v = ledger.accumulator(inner, ledger.size());
  out.per_coordinate.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.per_coordinate[i] = std::sqrt(v[i]);
    out.total += out.per_coordinate[i];
  }
  return out;
}

double parse_double(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') detail::throw_contract("read_ledger_csv: bad number '" + field + "'");
  return v;
}

}  // namespace

CoordinateTotals path_length_l1(std::span<const DecisionVector> comparators) {
  return per_coordinate_variation(comparators, [](double d) { return std::fabs(d); });
}

double path_length_l2(std::span<const DecisionVector> comparators) {
  double acc = 0.0;
  for (std::size_t t = 1; t < comparators.size(); ++t) acc += norm2(comparators[t] - comparators[t - 1]);
  return acc;
}

CoordinateTotals squared_path_length(std::span<const DecisionVector> comparators) {
  return per_coordinate_variation(comparators, [](double d) { return d * d; });
}

GradientNorms gradient_history_norms(const RegretLedger& ledger) {
  if (ledger.empty()) detail::throw_contract("gradient_history_norms: empty ledger");
  GradientNorms out;
  for (std::size_t j = 0; j < ledger.inner_count(); ++j) out.per_inner.push_back(history_norms(ledger, j));
  out.first = out.per_inner.front();
  out.max_over_inner.per_coordinate.assign(ledger.dimension(), 0.0);
  for (const auto& inner : out.per_inner) {
    for (std::size_t i = 0; i < ledger.dimension(); ++i) {
      out.max_over_inner.per_coordinate[i] = std::max(out.max_over_inner.per_coordinate[i], inner.per_coordinate[i]);
    }
  }
  for (double c : out.max_over_inner.per_coordinate) out.max_over_inner.total += c;
  for (const auto& r : ledger.records()) {
    for (const auto& g : r.gradients) out.sup_inf_norm = std::max(out.sup_inf_norm, inf_norm(g));
  }
  return out;
}

DecisionVector best_fixed_comparator(std::span<const LossRound> rounds, const FeasibleRegion& region) {
  if (rounds.empty()) detail::throw_contract("best_fixed_comparator: no rounds");
  const std::size_t p = region.dimension();
  // Every supported loss is quadratic: f_t(x) = 1/2 x^T A_t x - q_t^T x + const.
  std::vector<double> hess(p * p, 0.0);
  std::vector<double> lin(p, 0.0);
  for (const auto& r : rounds) {
    if (r.dimension() != p) detail::throw_contract("best_fixed_comparator: dimension mismatch");
    if (r.kind() == LossKind::SquareRegression) {
      const auto& a = r.feature();
      for (std::size_t i = 0; i < p; ++i) {
        lin[i] += a[i] * r.label();
        for (std::size_t j = 0; j < p; ++j) hess[i * p + j] += a[i] * a[j];
      }
    } else {
      for (std::size_t i = 0; i < p; ++i) {
        lin[i] += r.curvature() * r.center()[i];
        hess[i * p + i] += r.curvature();
      }
    }
  }
  const double inv_t = 1.0 / static_cast<double>(rounds.size());
  for (auto& h : hess) h *= inv_t;
  for (auto& q : lin) q *= inv_t;

  double lipschitz = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p; ++j) row += std::fabs(hess[i * p + j]);
    lipschitz = std::max(lipschitz, row);
  }
  if (lipschitz == 0.0) return region.center();

  auto gradient = [&](const DecisionVector& x) {
    std::vector<double> g(p);
    for (std::size_t i = 0; i < p; ++i) {
      double acc = -lin[i];
      for (std::size_t j = 0; j < p; ++j) acc += hess[i * p + j] * x[j];
      g[i] = acc;
    }
    return DecisionVector(std::move(g));
  };

  constexpr double kTolerance = 1e-10;
  constexpr std::size_t kMaxIterations = 10'000'000;
  DecisionVector x = region.center();
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    const DecisionVector next = region.project(axpy(x, -1.0 / lipschitz, gradient(x)));
    const double mapping = lipschitz * norm2(next - x);
    x = next;
    if (mapping <= kTolerance) return x;
  }
  detail::throw_degenerate("best_fixed_comparator: projected gradient descent did not converge");
}

void write_trace_csv(const std::filesystem::path& path, const RegretLedger& ledger) {
  CsvWriter csv(path, {"t", "loss", "comparator_loss", "inst_regret", "cum_dynamic_regret"});
  double cum = 0.0;
  for (const auto& r : ledger.records()) {
    const double inst = r.loss - r.comparator_loss;
    cum += inst;
    csv.cell(r.t).cell(r.loss).cell(r.comparator_loss).cell(inst).cell(cum);
    csv.end_row();
  }
}

void write_ledger_csv(const std::filesystem::path& path, const RegretLedger& ledger) {
  const std::size_t p = ledger.dimension();
  const std::size_t k = ledger.inner_count();
  std::vector<std::string> header{"t", "loss", "comparator_loss"};
  for (std::size_t i = 0; i < p; ++i) header.push_back("comparator_" + std::to_string(i));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < p; ++i) header.push_back("g" + std::to_string(j) + "_" + std::to_string(i));
  }
  CsvWriter csv(path, header);
  for (const auto& r : ledger.records()) {
    csv.cell(r.t).cell(r.loss).cell(r.comparator_loss);
    for (double x : r.comparator) csv.cell(x);
    for (const auto& g : r.gradients) {
      for (double x : g) csv.cell(x);
    }
    csv.end_row();
  }
}

RegretLedger read_ledger_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  std::size_t p = 0;
  while (std::find(table.header.begin(), table.header.end(), "comparator_" + std::to_string(p)) !=
         table.header.end()) {
    ++p;
  }
  if (p == 0 || table.header.size() < 3 + p || (table.header.size() - 3 - p) % p != 0) {
    detail::throw_contract("read_ledger_csv: malformed header in " + path.string());
  }
  const std::size_t k = (table.header.size() - 3 - p) / p;
  RegretLedger ledger;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) detail::throw_contract("read_ledger_csv: ragged row");
    std::size_t col = 0;
    RoundRecord rec;
    rec.t = std::stoull(row[col++]);
    rec.loss = parse_double(row[col++]);
    rec.comparator_loss = parse_double(row[col++]);
    auto read_vec = [&] {
      std::vector<double> v(p);
      for (auto& x : v) x = parse_double(row[col++]);
      return DecisionVector(std::move(v));
    };
    rec.comparator = read_vec();
    for (std::size_t j = 0; j < k; ++j) rec.gradients.push_back(read_vec());
    ledger.append(std::move(rec));
  }
  return ledger;
}

}  // namespace dynoco
