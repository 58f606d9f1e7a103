#include "homfour/interpolate.hpp"

#include "homfour/inequalities.hpp"  // level_sup

#include <algorithm>
#include <cmath>

namespace homfour {

void DiscreteMeasureSpace::validate() const {
  if (nu.empty()) throw invalid_parameter("measure space needs at least one atom");
  for (double w : nu)
    if (!(w > 0.0) || !std::isfinite(w))
      throw invalid_parameter("measure atoms must be strictly positive and finite");
}

double DiscreteMeasureSpace::total() const {
  return pairwise_sum(std::span<const double>(nu));
}

double MatrixSequence::scalar(std::size_t i) const {
  if (i >= mats.size() || mats.size() != kappa.size())
    throw invalid_parameter("matrix sequence index out of range");
  if (kappa[i] < 1) throw invalid_parameter("kappa must be a positive count");
  return mats[i].norm() / std::sqrt(static_cast<double>(kappa[i]));
}

double distribution_function(const MatrixSequence& h, const DiscreteMeasureSpace& space,
                             double y) {
  if (!(y > 0.0)) throw invalid_parameter("distribution_function needs y > 0");
  if (h.size() != space.nu.size())
    throw invalid_parameter("sequence and measure sizes differ");
  space.validate();
  std::vector<double> terms;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.scalar(i) >= y) terms.push_back(space.nu[i]);
  return pairwise_sum(std::span<const double>(terms));
}

double sequence_lp_p(const MatrixSequence& h, const DiscreteMeasureSpace& space,
                     double p) {
  if (p < 1.0) throw invalid_parameter("sequence_lp_p requires p >= 1");
  if (h.size() != space.nu.size())
    throw invalid_parameter("sequence and measure sizes differ");
  space.validate();
  std::vector<double> terms(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    terms[i] = std::pow(h.scalar(i), p) * space.nu[i];
  return pairwise_sum(std::span<const double>(terms));
}

double layer_cake_integral(const MatrixSequence& h, const DiscreteMeasureSpace& space,
                           double p) {
  if (p < 1.0) throw invalid_parameter("layer_cake_integral requires p >= 1");
  if (h.size() != space.nu.size())
    throw invalid_parameter("sequence and measure sizes differ");
  space.validate();
  // Sort the level set ascending; on (y_{k-1}, y_k] the distribution function
  // is the total mass at levels >= y_k, so the integral telescopes into
  // sum_k mass(>= y_k) * (y_k^p - y_{k-1}^p).
  std::vector<std::pair<double, double>> levels(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) levels[i] = {h.scalar(i), space.nu[i]};
  std::sort(levels.begin(), levels.end());
  double suffix = 0.0;
  for (const auto& [y, w] : levels) suffix += w;
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < levels.size();) {
    const double y = levels[k].first;
    double here = 0.0;
    while (k < levels.size() && levels[k].first == y) {
      here += levels[k].second;
      ++k;
    }
    if (y > 0.0) integral += suffix * (std::pow(y, p) - std::pow(prev, p));
    prev = std::max(prev, y);
    suffix -= here;
  }
  return integral;
}

WeakTypeResult weak_type_norm(std::span<const WeakTypeSample> samples,
                              const DiscreteMeasureSpace& space, double p) {
  if (p < 1.0) throw invalid_parameter("weak_type_norm requires p >= 1");
  if (samples.empty()) throw invalid_parameter("weak_type_norm needs samples");
  space.validate();
  WeakTypeResult result;
  for (const WeakTypeSample& sample : samples) {
    if (!(sample.input_norm > 0.0)) {
      ++result.skipped;
      continue;
    }
    if (sample.output.size() != space.nu.size())
      throw invalid_parameter("weak_type_norm: sample size mismatch");
    std::vector<std::pair<double, double>> atoms(sample.output.size());
    for (std::size_t i = 0; i < sample.output.size(); ++i)
      atoms[i] = {sample.output.scalar(i), space.nu[i]};
    // sup_y y * nu{|Af| >= y}^{1/p}, exact at the finite level set.
    const double best = level_sup(std::move(atoms), 1.0 / p);
    result.M = std::max(result.M, best / sample.input_norm);
  }
  if (result.skipped == static_cast<int>(samples.size()))
    throw invalid_parameter("weak_type_norm: every sample had zero input norm");
  return result;
}

MarcinkiewiczReport marcinkiewicz_check(double p1, double p2, double p, double M1,
                                        double M2, std::span<const WeakTypeSample> samples,
                                        const DiscreteMeasureSpace& space) {
  if (!(p1 < p && p < p2)) throw invalid_parameter("marcinkiewicz_check needs p1 < p < p2");
  if (!(M1 > 0.0 && M2 > 0.0))
    throw invalid_parameter("marcinkiewicz_check needs positive endpoint constants");
  MarcinkiewiczReport rep;
  rep.theta = (1.0 / p1 - 1.0 / p) / (1.0 / p1 - 1.0 / p2);
  rep.interpolated_constant = std::pow(M1, 1.0 - rep.theta) * std::pow(M2, rep.theta);
  for (const WeakTypeSample& sample : samples) {
    if (!(sample.input_norm > 0.0)) continue;
    const double strong = std::pow(sequence_lp_p(sample.output, space, p), 1.0 / p);
    rep.max_ratio =
        std::max(rep.max_ratio, strong / (rep.interpolated_constant * sample.input_norm));
  }
  return rep;
}

MatrixSequence paley_sequence(const CoefficientField& fhat, const Weight& phi) {
  MatrixSequence h;
  h.mats.reserve(fhat.size());
  h.kappa.reserve(fhat.size());
  for (const auto& [pi, v] : fhat.entries()) {
    h.mats.push_back(v / phi(pi));
    h.kappa.push_back(pi.inv);
  }
  return h;
}

DiscreteMeasureSpace paley_space(std::span<const Dual> duals, const Weight& phi) {
  DiscreteMeasureSpace space;
  space.nu.reserve(duals.size());
  for (const Dual& pi : duals) {
    const double w = phi(pi);
    space.nu.push_back(w * w * pi.dim * pi.inv);
  }
  space.validate();
  return space;
}

}  // namespace homfour
