// Copyright 2026 The prodstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "prodstate/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prodstate/error.hpp"
#include "prodstate/random.hpp"

namespace prodstate {

SpectralMeasure spectral_measure(const Observable& obs, double cluster_tol) {
  const Matrix& a = obs.matrix;
  if (a.rows() != a.cols() || a.rows() == 0) throw DimensionError("spectral_measure: observable must be square");
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw ValidationError("hermitian", asym, "spectral_measure: observable is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw NumericalError("spectral_measure: eigensolver failed");
  const auto& evals = es.eigenvalues();  // ascending
  const Matrix& evecs = es.eigenvectors();

  SpectralMeasure sm;
  for (Eigen::Index k = 0; k < evals.size();) {
    Eigen::Index end = k + 1;
    while (end < evals.size() && std::abs(evals(end) - evals(end - 1)) <= cluster_tol * (1.0 + std::abs(evals(end - 1))))
      ++end;
    const Matrix block = evecs.middleCols(k, end - k);
    sm.values.push_back(evals.segment(k, end - k).mean());
    sm.projectors.push_back(block * block.adjoint());
    k = end;
  }
  return sm;
}

std::vector<double> JointDistribution::marginal(std::size_t factor) const {
  std::vector<double> out(outcomes.at(factor).size(), 0.0);
  long after = 1;
  for (std::size_t f = factor + 1; f < outcomes.size(); ++f) after *= static_cast<long>(outcomes[f].size());
  const long m = static_cast<long>(out.size());
  for (std::size_t idx = 0; idx < table.size(); ++idx) out[(static_cast<long>(idx) / after) % m] += table[idx];
  return out;
}

double JointDistribution::at(std::span<const int> outcome_index) const {
  if (outcome_index.size() != outcomes.size()) throw DimensionError("JointDistribution::at: index length mismatch");
  long idx = 0;
  for (std::size_t f = 0; f < outcomes.size(); ++f) {
    if (outcome_index[f] < 0 || outcome_index[f] >= static_cast<int>(outcomes[f].size()))
      throw DimensionError("JointDistribution::at: outcome index out of range");
    idx = idx * static_cast<long>(outcomes[f].size()) + outcome_index[f];
  }
  return table[static_cast<std::size_t>(idx)];
}

JointDistribution joint_distribution(const MixedState& rho, std::span<const Observable> obs) {
  const Dims& dims = rho.dims();
  if (obs.size() != dims.size())
    throw DimensionError("joint_distribution: need one observable per factor (got " + std::to_string(obs.size()) +
                         " for " + std::to_string(dims.size()) + ")");
  std::vector<SpectralMeasure> measures;
  JointDistribution jd;
  for (std::size_t f = 0; f < obs.size(); ++f) {
    if (obs[f].factor != f || obs[f].matrix.rows() != dims[f])
      throw DimensionError("joint_distribution: observable " + std::to_string(f) + " does not match its factor");
    measures.push_back(spectral_measure(obs[f]));
    jd.outcomes.push_back(measures.back().values);
  }

  long count = 1;
  for (const auto& m : measures) count *= static_cast<long>(m.values.size());
  jd.table.assign(static_cast<std::size_t>(count), 0.0);
  const Matrix rho_t = rho.matrix().transpose();
  double total = 0.0;
  for (long idx = 0; idx < count; ++idx) {
    long rem = idx;
    std::vector<int> digit(measures.size());
    for (std::size_t f = measures.size(); f-- > 0;) {
      const long m = static_cast<long>(measures[f].values.size());
      digit[f] = static_cast<int>(rem % m);
      rem /= m;
    }
    Matrix k = Matrix::Identity(1, 1);
    for (std::size_t f = 0; f < measures.size(); ++f) k = kron(k, measures[f].projectors[digit[f]]);
    double p = k.cwiseProduct(rho_t).sum().real();
    if (p < 0.0) p = 0.0;  // rounding on a PSD state
    jd.table[static_cast<std::size_t>(idx)] = p;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-8) throw NumericalError("joint_distribution: probabilities do not sum to 1");
  return jd;
}

double independence_violation(const JointDistribution& jd) {
  const std::size_t n = jd.factors();
  if (n <= 1) return 0.0;
  std::vector<std::vector<double>> marg;
  std::vector<long> radix;
  for (std::size_t f = 0; f < n; ++f) {
    marg.push_back(jd.marginal(f));
    radix.push_back(static_cast<long>(jd.outcomes[f].size()));
  }
  double worst = 0.0;
  for (std::size_t idx = 0; idx < jd.table.size(); ++idx) {
    long rem = static_cast<long>(idx);
    double prod = 1.0;
    for (std::size_t f = n; f-- > 0;) {
      prod *= marg[f][static_cast<std::size_t>(rem % radix[f])];
      rem /= radix[f];
    }
    worst = std::max(worst, std::abs(jd.table[idx] - prod));
  }
  return worst;
}

std::vector<std::vector<double>> sample_outcomes(const MixedState& rho, std::span<const Observable> obs, long n,
                                                 std::uint64_t seed) {
  if (n < 0) throw DimensionError("sample_outcomes: negative sample count");
  std::vector<std::vector<double>> out;
  if (n == 0) return out;
  const JointDistribution jd = joint_distribution(rho, obs);
  std::vector<double> cdf(jd.table.size());
  std::partial_sum(jd.table.begin(), jd.table.end(), cdf.begin());

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, cdf.back());
  out.reserve(static_cast<std::size_t>(n));
  for (long s = 0; s < n; ++s) {
    const double u = unif(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    long idx = std::min<long>(static_cast<long>(it - cdf.begin()), static_cast<long>(cdf.size()) - 1);
    std::vector<double> tuple(jd.factors());
    for (std::size_t f = jd.factors(); f-- > 0;) {
      const long m = static_cast<long>(jd.outcomes[f].size());
      tuple[f] = jd.outcomes[f][static_cast<std::size_t>(idx % m)];
      idx /= m;
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace prodstate
