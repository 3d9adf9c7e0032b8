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


#include "prodstate/oracle.hpp"

#include <cmath>

#include "prodstate/error.hpp"
#include "prodstate/random.hpp"

namespace prodstate {

namespace {

constexpr std::uint64_t kRestartSeed = 0x0a15'0ac1'e5eeULL;

// sum over all indices except factor i of conj(prod_j phi_j[a_j]) Phi[a].
Vector contract_except(const Vector& phi, const Dims& dims, const std::vector<Vector>& factors, std::size_t i) {
  Vector out = Vector::Zero(dims[i]);
  for (long idx = 0; idx < dims.total(); ++idx) {
    const auto multi = dims.multi_index(idx);
    Complex w = 1.0;
    for (std::size_t j = 0; j < dims.size(); ++j)
      if (j != i) w *= std::conj(factors[j](multi[j]));
    out(multi[i]) += w * phi(idx);
  }
  return out;
}

double overlap_of(const Vector& phi, const std::vector<Vector>& factors) {
  return std::abs(kron_all(std::span<const Vector>(factors)).dot(phi));
}

PureOracleResult als(const Vector& phi, const Dims& dims, std::vector<Vector> factors, int max_iters) {
  PureOracleResult res;
  double prev = overlap_of(phi, factors);
  for (int it = 0; it < max_iters; ++it) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      Vector v = contract_except(phi, dims, factors, i);
      const double nv = v.norm();
      if (nv > 0.0) factors[i] = v / nv;
    }
    const double now = overlap_of(phi, factors);
    res.iterations = it + 1;
    const bool done = std::abs(now - prev) < 1e-12;
    prev = now;
    if (done) break;
  }
  res.overlap = prev;
  res.best_product = std::move(factors);
  return res;
}

void check_unit(const PureState& phi) {
  const double dev = std::abs(phi.norm() - 1.0);
  if (dev > kUnitTol) throw ValidationError("norm", dev, "oracle: state is not a unit vector");
}

template <typename Eval>
ViolationReport grid_search(const Dims& dims, bool with_identity, long cap, Eval&& eval) {
  std::vector<std::vector<Vector>> bases;
  long count = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    bases.push_back(projector_basis(dims[f]));
    count *= static_cast<long>(bases.back().size()) + (with_identity ? 1 : 0);
    if (count > cap) throw DimensionError("oracle_condition_grid: tuple count exceeds cap " + std::to_string(cap));
  }
  ViolationReport report;
  std::vector<long> idx(dims.size(), 0);
  for (long g = 0; g < count; ++g) {
    long rem = g;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const long m = static_cast<long>(bases[f].size()) + (with_identity ? 1 : 0);
      idx[f] = rem % m;
      rem /= m;
    }
    std::vector<Projector> tuple;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      if (idx[f] == static_cast<long>(bases[f].size()))
        tuple.push_back(Projector::identity(f, dims[f]));
      else
        tuple.emplace_back(f, bases[f][static_cast<std::size_t>(idx[f])]);
    }
    const double v = eval(tuple);
    ++report.probes_evaluated;
    // Strict improvement keeps the lowest tuple index on ties.
    if (report.witness.empty() || v > report.max_violation) {
      report.max_violation = v;
      report.witness = std::move(tuple);
    }
  }
  return report;
}

}  // namespace

PureOracleResult oracle_pure_product(const PureState& phi, double tol, int max_iters) {
  check_unit(phi);
  const Dims& dims = phi.dims();
  const Vector unit = phi.amplitudes() / phi.norm();
  const Matrix projector = unit * unit.adjoint();

  std::vector<Vector> start;
  bool degenerate = false;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Matrix reduced = partial_trace(projector, dims, {i});
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(reduced));
    const auto& ev = es.eigenvalues();
    const auto d = ev.size();
    if (d > 1 && ev(d - 1) - ev(d - 2) < 1e-8) degenerate = true;
    start.push_back(es.eigenvectors().col(d - 1));
  }

  PureOracleResult best = als(unit, dims, start, max_iters);
  if (degenerate) {
    for (std::uint64_t r = 0; r < 3; ++r) {
      Rng rng = make_rng(kRestartSeed, r);
      std::vector<Vector> init;
      for (std::size_t i = 0; i < dims.size(); ++i) init.push_back(haar_vector(dims[i], rng));
      PureOracleResult cand = als(unit, dims, std::move(init), max_iters);
      if (cand.overlap > best.overlap) best = std::move(cand);
    }
  }
  best.is_product = best.overlap >= 1.0 - tol;
  return best;
}

MixedOracleResult oracle_mixed_product(const MixedState& rho, double tol) {
  MixedOracleResult res;
  const Dims& dims = rho.dims();
  for (std::size_t i = 0; i < dims.size(); ++i) res.marginals.push_back(partial_trace(rho.matrix(), dims, {i}));
  res.distance = trace_norm(rho.matrix() - kron_all(std::span<const Matrix>(res.marginals)));
  res.is_product = res.distance <= tol;
  return res;
}

ViolationReport oracle_condition_grid(const PureState& phi, long cap) {
  check_unit(phi);
  const Dims& dims = phi.dims();
  const Vector unit = phi.amplitudes() / phi.norm();
  return grid_search(dims, false, cap, [&](const std::vector<Projector>& tuple) {
    std::vector<Matrix> mats;
    double rhs = 1.0;
    for (const auto& p : tuple) {
      mats.push_back(p.matrix());
      rhs *= unit.dot(embed_local(mats.back(), p.factor(), dims) * unit).real();
    }
    const double lhs = unit.dot(kron_all(std::span<const Matrix>(mats)) * unit).real();
    return std::abs(lhs - rhs);
  });
}

ViolationReport oracle_condition_grid(const MixedState& rho, long cap) {
  const Dims& dims = rho.dims();
  return grid_search(dims, true, cap, [&](const std::vector<Projector>& tuple) {
    std::vector<Matrix> mats;
    double rhs = 1.0;
    for (const auto& p : tuple) {
      mats.push_back(p.matrix());
      rhs *= (embed_local(mats.back(), p.factor(), dims) * rho.matrix()).trace().real();
    }
    const double lhs = (kron_all(std::span<const Matrix>(mats)) * rho.matrix()).trace().real();
    return std::abs(lhs - rhs);
  });
}

}  // namespace prodstate
