// Copyright 2026 The depp-sim Authors
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

#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "depp/fock.hpp"

namespace depp::testing {

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Transition amplitude <out| U |in> for bosons via the matrix permanent:
//   Perm(M) / sqrt(prod n_i! prod m_j!),  M[k][l] = U(out_l, in_k).
inline Complex permanent_amplitude(const Eigen::MatrixXcd& u,
                                   const Occupation& in,
                                   const Occupation& out) {
  std::vector<int> rows;
  std::vector<int> cols;
  double norm = 1.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (int k = 0; k < in[i]; ++k) rows.push_back(static_cast<int>(i));
    norm *= factorial(in[i]);
  }
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (int k = 0; k < out[j]; ++k) cols.push_back(static_cast<int>(j));
    norm *= factorial(out[j]);
  }
  if (rows.size() != cols.size()) return {};
  std::vector<int> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{};
  do {
    Complex term{1.0, 0.0};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      term *= u(cols[static_cast<std::size_t>(perm[k])], rows[k]);
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / std::sqrt(norm);
}

// All occupation vectors over `modes` modes with exactly `photons` photons.
inline std::vector<Occupation> occupations(std::size_t modes, int photons) {
  std::vector<Occupation> out;
  Occupation cur(modes, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == modes) {
      cur[i] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = static_cast<std::uint8_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, photons);
  return out;
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline FockState random_state(const ModeBasis& basis, int max_photons,
                              std::mt19937& rng) {
  std::normal_distribution<double> g;
  FockState::Terms terms;
  for (int n = 0; n <= max_photons; ++n) {
    for (const auto& occ : occupations(basis.size(), n)) {
      if (rng() % 3 == 0) terms[occ] = Complex(g(rng), g(rng));
    }
  }
  if (terms.empty()) terms[Occupation(basis.size(), 0)] = 1.0;
  return FockState(basis, std::move(terms)).normalized();
}

inline ModeBasis small_basis() {
  return ModeBasis({ModeId(Spatial::a1, Pol::H), ModeId(Spatial::a1, Pol::V),
                    ModeId(Spatial::b1, Pol::H), ModeId(Spatial::b1, Pol::V)});
}

// Dense 4-qubit amplitude tensor psi[c1][c2][d1][d2] of a four-mode
// coincidence state, then explicit partial trace over (c2, d2).
inline Eigen::Matrix4cd trace_out_c2_d2(const Complex (&psi)[2][2][2][2]) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              rho(2 * a + b, 2 * a2 + b2) +=
                  psi[a][x][b][y] * std::conj(psi[a2][x][b2][y]);
  return rho;
}

}  // namespace depp::testing
