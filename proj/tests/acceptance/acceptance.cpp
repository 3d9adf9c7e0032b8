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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "prodstate/cli.hpp"
#include "prodstate/criterion.hpp"
#include "prodstate/measurement.hpp"
#include "prodstate/op_schmidt.hpp"
#include "prodstate/oracle.hpp"
#include "prodstate/schmidt.hpp"

using namespace prodstate;
using namespace prodstate::testing;

namespace {

// Collects the first few failures of a criterion for the report line.
struct Tally {
  int failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  bool ok() const { return failures == 0; }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<Rank1Projector> as_rank1(const std::vector<Projector>& ps) {
  std::vector<Rank1Projector> out;
  for (const auto& p : ps) out.push_back(rank1_projector(p.factor(), p.range().col(0)));
  return out;
}

// 1. Schmidt decomposition round trip, trace and orthonormality.
void schmidt_correctness(Tally& t) {
  Rng rng = make_rng(1001);
  double worst_rec = 0, worst_sum = 0, worst_orth = 0;
  for (int k = 0; k < 200; ++k) {
    std::vector<int> dims;
    do dims = random_dims(rng, 4, 2, 7);
    while (Dims(dims).total() > 2500);
    const PureState phi = random_pure(dims, rng);
    for (int cut = 1; cut < static_cast<int>(dims.size()); ++cut) {
      const auto sd = schmidt_decompose(phi, BipartiteSplit{cut});
      worst_rec = std::max(worst_rec, (reconstruct(sd).amplitudes() - phi.amplitudes()).norm());
      double sum = 0;
      for (double l : sd.lambdas) sum += l;
      worst_sum = std::max(worst_sum, std::abs(sum - phi.amplitudes().squaredNorm()));
      Matrix e(sd.left_vectors[0].size(), sd.rank()), f(sd.right_vectors[0].size(), sd.rank());
      for (int i = 0; i < sd.rank(); ++i) {
        e.col(i) = sd.left_vectors[i];
        f.col(i) = sd.right_vectors[i];
      }
      const Matrix id = Matrix::Identity(sd.rank(), sd.rank());
      worst_orth = std::max({worst_orth, (e.adjoint() * e - id).cwiseAbs().maxCoeff(),
                             (f.adjoint() * f - id).cwiseAbs().maxCoeff()});
    }
  }
  t.expect(worst_rec <= 1e-9, "reconstruction error " + fmt(worst_rec));
  t.expect(worst_sum <= 1e-10, "lambda sum deviation " + fmt(worst_sum));
  t.expect(worst_orth <= 1e-10, "orthonormality deviation " + fmt(worst_orth));
}

// 2. Pinned values, each against a hand-derived number.
void pinned_values(Tally& t) {
  const auto sd = schmidt_decompose(bell(), BipartiteSplit{1});
  t.expect(sd.lambdas.size() == 2 && std::abs(sd.lambdas[0] - 0.5) <= 1e-12 && std::abs(sd.lambdas[1] - 0.5) <= 1e-12,
           "Bell lambdas");

  const Vector k0 = ket({1, 0});
  const std::vector<Rank1Projector> p00{rank1_projector(0, k0), rank1_projector(1, k0)};
  const std::vector<Rank1Projector> p000{rank1_projector(0, k0), rank1_projector(1, k0), rank1_projector(2, k0)};
  // Bell: 1/2 - 1/2 * 1/2. GHZ: 1/2 - (1/2)^3.
  const double vb = pure_condition_violation(bell(), p00);
  t.expect(std::abs(vb - 0.25) <= 1e-12, "Bell violation " + fmt(vb));
  const double vg = pure_condition_violation(ghz(), p000);
  t.expect(std::abs(vg - 0.375) <= 1e-12, "GHZ violation " + fmt(vg));

  // rho_cc = (P0 (x) P0 + P1 (x) P1)/2 reshuffles to diag(1/2, 0, 0, 1/2).
  for (bool herm : {false, true}) {
    const auto os = operator_schmidt_decompose(classical_correlated().matrix(), classical_correlated().dims(),
                                               BipartiteSplit{1}, kRankTol, herm);
    t.expect(os.coefficients.size() == 2 && std::abs(os.coefficients[0] - 0.5) <= 1e-10 &&
                 std::abs(os.coefficients[1] - 0.5) <= 1e-10,
             "rho_cc operator Schmidt coefficients");
  }
  // Marginals I/2 each; rho_cc - I/4 = diag(1/4, -1/4, -1/4, 1/4).
  const double dist = oracle_mixed_product(classical_correlated()).distance;
  t.expect(std::abs(dist - 1.0) <= 1e-9, "rho_cc distance " + fmt(dist));
}

// 3. Pure criterion on product and Haar-random states.
void pure_equivalence(Tally& t) {
  Rng rng = make_rng(1003);
  ProbeOptions opts;
  opts.n_probes = 1000;
  for (int k = 0; k < 200; ++k) {
    const auto dims = random_dims(rng, 4, 2, 4);
    const PureState phi = random_product_pure(dims, rng);
    const auto v = check_pure_product(phi);
    t.expect(v.is_product, "product state declared entangled");
    opts.seed = static_cast<std::uint64_t>(k);
    const double worst = probe_condition(phi, opts).max_violation;
    t.expect(worst <= 1e-9, "product probe violation " + fmt(worst));
  }
  for (int k = 0; k < 200; ++k) {
    const auto dims = random_dims(rng, 4, 2, 4);
    const PureState phi = random_pure(dims, rng);
    const auto v = check_pure_product(phi);
    t.expect(!v.is_product, "Haar state declared product");
    if (v.witness) {
      const double again = pure_condition_violation(phi, as_rank1(v.witness->witness));
      t.expect(again > 1e-6 && std::abs(again - v.witness->max_violation) <= 1e-12,
               "witness does not re-verify " + fmt(again));
    } else {
      t.expect(false, "no witness");
    }
  }
}

// 4. Mixed criterion on product and correlated states.
void mixed_equivalence(Tally& t) {
  Rng rng = make_rng(1004);
  for (int k = 0; k < 100; ++k) {
    const auto dims = random_dims(rng, 3, 2, 3);
    const MixedState rho = random_product_mixed(dims, rng);
    const auto v = check_mixed_product(rho);
    t.expect(v.is_product, "product mixed state declared not product");
    if (!v.is_product) continue;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      const double d = trace_norm(v.mixed_factors[f] - partial_trace(rho, {f}).matrix());
      t.expect(d <= 1e-9, "factor mismatch " + fmt(d));
    }
  }
  int checked = 0;
  while (checked < 100) {
    const auto dims = random_dims(rng, 3, 2, 3);
    const MixedState rho = random_mixed(dims, rng);
    if (oracle_mixed_product(rho).is_product) continue;
    ++checked;
    const auto v = check_mixed_product(rho);
    t.expect(!v.is_product, "non-product mixed state declared product");
    if (v.witness) {
      const double again = mixed_condition_violation(rho, v.witness->witness);
      t.expect(again > 1e-6, "mixed witness does not re-verify " + fmt(again));
    }
  }
  t.expect(!check_mixed_product(classical_correlated()).is_product, "rho_cc declared product");
}

// 5. Criterion and brute-force oracle verdicts coincide.
void oracle_agreement(Tally& t) {
  Rng rng = make_rng(1005);
  int disagree = 0;
  for (int k = 0; k < 500; ++k) {
    const auto dims = random_dims(rng, 3, 2, 3);
    PureState phi = random_pure(dims, rng);
    MixedState rho = random_mixed(dims, rng);
    switch (k % 3) {
      case 0:
        phi = random_product_pure(dims, rng);
        rho = random_product_mixed(dims, rng);
        break;
      case 1: {
        // Product first factor, correlated remainder.
        const std::vector<int> tail(dims.begin() + 1, dims.end());
        phi = PureState(Dims(dims), kron(haar_vector(dims[0], rng), random_pure(tail, rng).amplitudes()));
        rho = MixedState(Dims(dims), kron(random_density(dims[0], dims[0], rng), random_mixed(tail, rng).matrix()));
        break;
      }
      default:
        break;
    }
    if (check_pure_product(phi, kDecisionTol).is_product != oracle_pure_product(phi, kDecisionTol).is_product) ++disagree;
    if (check_mixed_product(rho, kDecisionTol).is_product != oracle_mixed_product(rho, kDecisionTol).is_product)
      ++disagree;
  }
  t.expect(disagree == 0, std::to_string(disagree) + " disagreements");
}

// 6. Norm, perturbation and projector-distance bounds.
void inequality_fuzz(Tally& t) {
  Rng rng = make_rng(1006);
  double slack21 = 1e300, slack22 = 1e300, slack31 = 1e300;
  for (int k = 0; k < 1000; ++k) {
    const auto dims = random_dims(rng, 3, 2, 4);
    const auto total = static_cast<int>(Dims(dims).total());
    const PureState phi(Dims(dims), random_complex(total, 1, rng).col(0));
    const PureState psi(Dims(dims), random_complex(total, 1, rng).col(0));
    const BipartiteSplit split{1 + static_cast<int>(rng() % (dims.size() - 1))};
    const Matrix cp = coefficient_matrix(phi, split);
    const Matrix cq = coefficient_matrix(psi, split);
    const Vector v = random_complex(static_cast<int>(cp.rows()), 1, rng).col(0);
    slack21 = std::min(slack21, phi.norm() * v.norm() - apply_t_phi(cp, v).norm());
    const double bound = (phi.norm() + psi.norm()) * (phi.amplitudes() - psi.amplitudes()).norm();
    slack22 = std::min(slack22, bound - operator_norm(cp * cp.adjoint() - cq * cq.adjoint()));

    const int d = 2 + static_cast<int>(rng() % 6);
    const auto p = rank1_projector(0, random_complex(d, 1, rng).col(0));
    const auto q = rank1_projector(0, random_complex(d, 1, rng).col(0));
    slack31 = std::min(slack31, (p.unit.norm() + q.unit.norm()) * (p.unit - q.unit).norm() -
                                    operator_norm(p.matrix() - q.matrix()));
  }
  t.expect(slack21 >= -1e-12, "norm bound slack " + fmt(slack21));
  t.expect(slack22 >= -1e-12, "perturbation bound slack " + fmt(slack22));
  t.expect(slack31 >= -1e-12, "projector bound slack " + fmt(slack31));
}

// 7. Subset-restricted condition.
void weakened_condition(Tally& t) {
  Rng rng = make_rng(1007);
  const MixedState prod = random_product_mixed({2, 3, 2}, rng);
  for (const auto& s : check_weakened_condition(prod, 300, 7))
    t.expect(s.max_violation <= 1e-9, "product subset violation " + fmt(s.max_violation));

  const MixedState rho(Dims({2, 2, 2}), kron(proj0(), bell_projector().matrix()));
  for (const auto& s : check_weakened_condition(rho, 300, 7)) {
    const bool has_pair = std::count(s.subset.begin(), s.subset.end(), 1) && std::count(s.subset.begin(), s.subset.end(), 2);
    if (has_pair)
      t.expect(s.max_violation > 0.1, "Bell-pair subset not violated");
    else
      t.expect(s.max_violation <= 1e-9, "subset without the pair violated " + fmt(s.max_violation));
  }
}

// 8. Measurement independence and the sampler.
void independence(Tally& t) {
  Rng rng = make_rng(1008);
  for (int k = 0; k < 50; ++k) {
    const auto dims = random_dims(rng, 3, 2, 4);
    const MixedState rho = random_product_mixed(dims, rng);
    std::vector<Observable> obs;
    for (std::size_t f = 0; f < dims.size(); ++f) obs.push_back({f, random_hermitian(dims[f], rng)});
    const double v = independence_violation(joint_distribution(rho, obs));
    t.expect(v <= 1e-9, "product state dependence " + fmt(v));
  }
  const std::vector<Observable> zz{{0, pauli_z()}, {1, pauli_z()}};
  const auto jd = joint_distribution(bell_projector(), zz);
  const double v = independence_violation(jd);
  t.expect(std::abs(v - 0.25) <= 1e-12, "Bell ZZ violation " + fmt(v));

  const MixedState rho = random_mixed({2, 3}, rng);
  const std::vector<Observable> obs{{0, random_hermitian(2, rng)}, {1, random_hermitian(3, rng)}};
  const auto table = joint_distribution(rho, obs);
  std::map<std::vector<double>, long> counts;
  for (const auto& s : sample_outcomes(rho, obs, 10000, 2024)) ++counts[s];
  for (std::size_t a = 0; a < table.outcomes[0].size(); ++a)
    for (std::size_t b = 0; b < table.outcomes[1].size(); ++b) {
      const int idx[2] = {static_cast<int>(a), static_cast<int>(b)};
      const double freq = counts[{table.outcomes[0][a], table.outcomes[1][b]}] / 10000.0;
      t.expect(std::abs(freq - table.at(idx)) <= 0.02, "sampler frequency off by " + fmt(freq - table.at(idx)));
    }
  std::map<std::vector<double>, long> bell_counts;
  for (const auto& s : sample_outcomes(bell_projector(), zz, 10000, 2025)) ++bell_counts[s];
  t.expect(std::abs(bell_counts[{1.0, 1.0}] / 10000.0 - 0.5) <= 0.02, "Bell sampler frequency");
}

// 9. Two consecutive CLI runs produce identical golden files.
void cli_determinism(Tally& t) {
  const char* env = std::getenv("PRODSTATE_TEST_DATA");
  const std::filesystem::path data = env ? env : "tests/data";
  const auto golden_dir = std::filesystem::temp_directory_path() / "prodstate_golden";
  std::filesystem::create_directories(golden_dir);
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"schmidt_bell", {"schmidt", (data / "bell.json").string(), "--cut", "1"}},
      {"schmidt_ghz", {"schmidt", (data / "ghz.json").string(), "--cut", "2"}},
      {"check_ghz", {"check", (data / "ghz.json").string()}},
      {"check_product", {"check", (data / "product.json").string()}},
      {"check_rho_cc", {"check", (data / "rho_cc.json").string()}},
      {"probe_bell", {"probe", (data / "bell.json").string(), "--seed", "7"}},
      {"probe_rho_cc", {"probe", (data / "rho_cc.json").string(), "--seed", "7"}},
  };
  for (const auto& [name, args] : cases) {
    std::ostringstream out1, err1, out2, err2;
    const int c1 = cli::run(args, out1, err1);
    {
      std::ofstream(golden_dir / (name + ".txt"), std::ios::binary) << out1.str();
    }
    const int c2 = cli::run(args, out2, err2);
    std::ifstream in(golden_dir / (name + ".txt"), std::ios::binary);
    std::ostringstream golden;
    golden << in.rdbuf();
    t.expect(c1 == c2 && golden.str() == out2.str(), name + " differs between runs");
    t.expect(!out1.str().empty() && c1 <= 1, name + " did not run (exit " + std::to_string(c1) + ")");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
      {"1 schmidt correctness", schmidt_correctness},
      {"2 pinned values", pinned_values},
      {"3 pure criterion equivalence", pure_equivalence},
      {"4 mixed criterion equivalence", mixed_equivalence},
      {"5 oracle agreement", oracle_agreement},
      {"6 inequality fuzzing", inequality_fuzz},
      {"7 weakened condition", weakened_condition},
      {"8 measurement independence", independence},
      {"9 cli determinism", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (t.ok()) {
      std::printf("PASS  %s (%.2fs)\n", name.c_str(), secs);
    } else {
      ++failed;
      std::printf("FAIL  %s (%.2fs): %d failures, first: %s\n", name.c_str(), secs, t.failures, t.first.c_str());
    }
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
