#include <algorithm>

#include "dbeval/metrics.hpp"

namespace dbeval {

namespace {

AgreementResult kappa_from_table(long kk, long kr, long rk, long rr, std::string program) {
  AgreementResult res;
  res.program = std::move(program);
  res.n_keep_keep = kk;
  res.n_keep_remove = kr;
  res.n_remove_keep = rk;
  res.n_remove_remove = rr;
  res.n_units = kk + kr + rk + rr;
  if (res.n_units == 0) {
    res.kappa = 1.0;
    res.p_o = 1.0;
    res.p_e = 1.0;
    return res;
  }
  double n = static_cast<double>(res.n_units);
  res.p_o = static_cast<double>(kk + rr) / n;
  double pa_keep = static_cast<double>(kk + kr) / n;
  double pb_keep = static_cast<double>(kk + rk) / n;
  res.p_e = pa_keep * pb_keep + (1.0 - pa_keep) * (1.0 - pb_keep);
  if (res.p_o == 1.0) {
    res.kappa = 1.0;  // identical labelings, regardless of p_e
  } else {
    res.kappa = (res.p_o - res.p_e) / (1.0 - res.p_e);
  }
  return res;
}

}  // namespace

AgreementResult cohens_kappa(const std::vector<bool>& labels_a,
                             const std::vector<bool>& labels_b, std::string program) {
  if (labels_a.size() != labels_b.size()) {
    throw InputError("cohens_kappa: labelings cover different unit domains (" +
                     std::to_string(labels_a.size()) + " vs " +
                     std::to_string(labels_b.size()) + " units)");
  }
  long kk = 0, kr = 0, rk = 0, rr = 0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    if (labels_a[i] && labels_b[i]) ++kk;
    else if (labels_a[i] && !labels_b[i]) ++kr;
    else if (!labels_a[i] && labels_b[i]) ++rk;
    else ++rr;
  }
  return kappa_from_table(kk, kr, rk, rr, std::move(program));
}

AgreementResult agreement_between_ground_truths(const SourceDocument& original,
                                                const SourceDocument& ground_truth_a,
                                                const SourceDocument& ground_truth_b,
                                                std::string program) {
  UnitSet base = base_units(original, Granularity::Loc);
  Alignment align_a = align_to_original(original, ground_truth_a);
  Alignment align_b = align_to_original(original, ground_truth_b);

  std::vector<bool> labels_a, labels_b;
  labels_a.reserve(base.line_units.size());
  labels_b.reserve(base.line_units.size());
  for (int line : base.line_units) {
    labels_a.push_back(align_a.retained(line));
    labels_b.push_back(align_b.retained(line));
  }
  return cohens_kappa(labels_a, labels_b, std::move(program));
}

AgreementSummary summarize_agreement(const std::vector<AgreementResult>& per_program) {
  AgreementSummary s;
  if (per_program.empty()) return s;
  double sum = 0.0;
  long kk = 0, kr = 0, rk = 0, rr = 0;
  for (const auto& r : per_program) {
    sum += r.kappa;
    kk += r.n_keep_keep;
    kr += r.n_keep_remove;
    rk += r.n_remove_keep;
    rr += r.n_remove_remove;
  }
  s.mean_of_programs = sum / static_cast<double>(per_program.size());
  AgreementResult pooled = kappa_from_table(kk, kr, rk, rr, "pooled");
  s.pooled_kappa = pooled.kappa;
  s.pooled_units = pooled.n_units;
  return s;
}

}  // namespace dbeval
