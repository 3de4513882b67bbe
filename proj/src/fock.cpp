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

#include "depp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace depp {

namespace {

constexpr std::uint8_t kMaxSlot = 15;

double sqrt_factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return std::sqrt(f);
}

void prune(FockState::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) {
    return std::abs(kv.second) < kPruneThreshold;
  });
}

void require_same_basis(const ModeBasis& a, const ModeBasis& b,
                        const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": basis mismatch");
  }
}

}  // namespace

Party owner(Spatial s) {
  switch (s) {
    case Spatial::a1:
    case Spatial::a2:
    case Spatial::c1:
    case Spatial::c2:
      return Party::A;
    default:
      return Party::B;
  }
}

std::string_view to_string(Spatial s) {
  static constexpr std::string_view names[] = {"a1", "a2", "c1", "c2",
                                               "b1", "b2", "d1", "d2"};
  return names[static_cast<int>(s)];
}

std::string_view to_string(Pol p) { return p == Pol::H ? "H" : "V"; }
std::string_view to_string(Party p) { return p == Party::A ? "A" : "B"; }

Spatial parse_spatial(std::string_view text) {
  for (int i = 0; i < 8; ++i) {
    auto s = static_cast<Spatial>(i);
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown spatial label '" + std::string(text) +
                              "'");
}

ModeId::ModeId(Spatial spatial, Pol pol, int slot)
    : ModeId(owner(spatial), spatial, pol, slot) {}

ModeId::ModeId(Party party, Spatial spatial, Pol pol, int slot)
    : party_(party), spatial_(spatial), pol_(pol),
      slot_(static_cast<std::uint8_t>(slot)) {
  if (owner(spatial) != party) {
    throw std::invalid_argument("spatial label " +
                                std::string(depp::to_string(spatial)) +
                                " does not belong to party " +
                                std::string(depp::to_string(party)));
  }
  if (slot < 0 || slot > kMaxSlot) {
    throw std::invalid_argument("mode slot out of range");
  }
}

std::string ModeId::label() const {
  std::string s{depp::to_string(spatial_)};
  s += depp::to_string(pol_);
  if (slot_ != 0) s += "#" + std::to_string(slot_);
  return s;
}

ModeBasis::ModeBasis(std::vector<ModeId> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw std::invalid_argument("mode basis is empty");
  std::set<ModeId> seen;
  for (const auto& m : modes_) {
    if (!seen.insert(m).second) {
      throw std::invalid_argument("duplicate mode " + m.label() +
                                  " in basis");
    }
  }
}

std::optional<std::size_t> ModeBasis::find(const ModeId& mode) const {
  auto it = std::find(modes_.begin(), modes_.end(), mode);
  if (it == modes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t ModeBasis::index_of(const ModeId& mode) const {
  if (auto i = find(mode)) return *i;
  throw std::invalid_argument("mode " + mode.label() + " not in basis");
}

bool ModeBasis::contains(Spatial s) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [s](const ModeId& m) { return m.spatial() == s; });
}

namespace {

ModeBasis make_basis(std::initializer_list<Spatial> labels,
                     const std::vector<int>& slots) {
  std::vector<ModeId> modes;
  for (int slot : slots) {
    for (Spatial s : labels) {
      modes.emplace_back(s, Pol::H, slot);
      modes.emplace_back(s, Pol::V, slot);
    }
  }
  return ModeBasis(std::move(modes));
}

}  // namespace

ModeBasis transmission_basis(const std::vector<int>& slots) {
  return make_basis({Spatial::a1, Spatial::a2, Spatial::b1, Spatial::b2},
                    slots);
}

ModeBasis output_basis(const std::vector<int>& slots) {
  return make_basis({Spatial::c1, Spatial::c2, Spatial::d1, Spatial::d2},
                    slots);
}

int photon_number(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

std::string occupation_label(const ModeBasis& basis, const Occupation& occ) {
  std::string out;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += basis[i].label();
    if (occ[i] > 1) out += "^" + std::to_string(occ[i]);
  }
  return out.empty() ? "vac" : out;
}

FockState::FockState(ModeBasis basis) : basis_(std::move(basis)) {}

FockState::FockState(ModeBasis basis, Terms terms)
    : basis_(std::move(basis)), terms_(std::move(terms)) {
  for (const auto& [occ, amp] : terms_) {
    if (occ.size() != basis_.size()) {
      throw std::invalid_argument("occupation vector does not match basis");
    }
    if (photon_number(occ) > kMaxPhotons) {
      throw std::invalid_argument("photon number exceeds supported maximum");
    }
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw InvariantViolation("non-finite amplitude");
    }
  }
  prune(terms_);
}

Complex FockState::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? Complex{} : it->second;
}

double FockState::norm_squared() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += std::norm(amp);
  return s;
}

double FockState::norm() const { return std::sqrt(norm_squared()); }

FockState FockState::scaled(Complex factor) const {
  Terms out;
  for (const auto& [occ, amp] : terms_) out.emplace(occ, amp * factor);
  return FockState(basis_, std::move(out));
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n < kPruneThreshold) {
    throw InvariantViolation("cannot normalize the zero state");
  }
  return scaled(1.0 / n);
}

std::string FockState::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [occ, amp] : terms_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi)", first ? "" : " + ",
                  amp.real(), amp.imag());
    os << buf << " |" << occupation_label(basis_, occ) << ">";
    first = false;
  }
  return os.str();
}

FockState vacuum(ModeBasis basis) {
  Occupation zero(basis.size(), 0);
  FockState::Terms t;
  t.emplace(std::move(zero), Complex{1.0, 0.0});
  return FockState(std::move(basis), std::move(t));
}

FockState create(const FockState& state, const ModeId& mode) {
  const std::size_t idx = state.basis().index_of(mode);
  FockState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    Occupation next = occ;
    const int n = next[idx];
    next[idx] = static_cast<std::uint8_t>(n + 1);
    out[next] += amp * std::sqrt(static_cast<double>(n + 1));
  }
  return FockState(state.basis(), std::move(out));
}

FockState superpose(std::span<const WeightedState> parts) {
  if (parts.empty()) throw std::invalid_argument("superpose: no parts");
  const ModeBasis& basis = parts.front().state.basis();
  FockState::Terms out;
  for (const auto& part : parts) {
    require_same_basis(basis, part.state.basis(), "superpose");
    for (const auto& [occ, amp] : part.state.terms()) {
      out[occ] += part.coefficient * amp;
    }
  }
  return FockState(basis, std::move(out));
}

Complex inner(const FockState& a, const FockState& b) {
  require_same_basis(a.basis(), b.basis(), "inner");
  Complex s{};
  for (const auto& [occ, amp] : a.terms()) {
    s += std::conj(amp) * b.amplitude(occ);
  }
  return s;
}

bool approx_equal(const FockState& a, const FockState& b, double tol) {
  if (!(a.basis() == b.basis())) return false;
  for (const auto& [occ, amp] : a.terms()) {
    if (std::abs(amp - b.amplitude(occ)) > tol) return false;
  }
  for (const auto& [occ, amp] : b.terms()) {
    if (std::abs(amp - a.amplitude(occ)) > tol) return false;
  }
  return true;
}

ModeMap::ModeMap(ModeBasis input, ModeBasis output, Eigen::MatrixXcd matrix)
    : input_(std::move(input)), output_(std::move(output)),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(output_.size()) ||
      matrix_.cols() != static_cast<Eigen::Index>(input_.size())) {
    throw std::invalid_argument("mode map matrix shape does not match bases");
  }
}

ModeMap ModeMap::identity(const ModeBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return ModeMap(basis, basis, Eigen::MatrixXcd::Identity(n, n));
}

bool ModeMap::is_isometry(double tol) const {
  const auto n = matrix_.cols();
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <=
         tol;
}

FockState apply_mode_map(const FockState& state, const ModeMap& map) {
  require_same_basis(state.basis(), map.input(), "apply_mode_map");
  const Eigen::MatrixXcd& u = map.matrix();
  const auto n_out = static_cast<std::size_t>(u.rows());

  FockState::Terms result;
  for (const auto& [occ, amp] : state.terms()) {
    // Expand prod_i (sum_j U(j,i) b_j^dag)^{n_i} as a polynomial in the
    // output creation operators, keyed by exponent vector.
    std::map<Occupation, Complex> poly;
    poly.emplace(Occupation(n_out, 0), Complex{1.0, 0.0});
    double in_norm = 1.0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      in_norm *= sqrt_factorial(occ[i]);
      for (int rep = 0; rep < occ[i]; ++rep) {
        std::map<Occupation, Complex> next;
        for (const auto& [mono, c] : poly) {
          for (std::size_t j = 0; j < n_out; ++j) {
            const Complex uji = u(static_cast<Eigen::Index>(j),
                                  static_cast<Eigen::Index>(i));
            if (uji == Complex{}) continue;
            Occupation m = mono;
            ++m[j];
            next[m] += c * uji;
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [mono, c] : poly) {
      double out_norm = 1.0;
      for (auto k : mono) out_norm *= sqrt_factorial(k);
      result[mono] += amp * c * (out_norm / in_norm);
    }
  }
  return FockState(map.output(), std::move(result));
}

MixedState::MixedState(std::vector<Branch> branches, bool conditioned)
    : branches_(std::move(branches)), conditioned_(conditioned) {
  if (branches_.empty() && !conditioned_) {
    throw std::invalid_argument("complete ensemble has no branches");
  }
  for (const auto& b : branches_) {
    if (!(b.weight >= 0.0)) {
      throw std::invalid_argument("negative branch weight in " + b.tag);
    }
    if (std::abs(b.state.norm() - 1.0) > kTolerance) {
      throw InvariantViolation("branch " + b.tag + " is not normalized");
    }
    require_same_basis(branches_.front().state.basis(), b.state.basis(),
                       "MixedState");
  }
  if (!conditioned_ && std::abs(total_weight() - 1.0) > kTolerance) {
    throw InvariantViolation("ensemble weights do not sum to one");
  }
}

MixedState MixedState::pure(FockState state, std::string tag) {
  std::vector<Branch> b;
  b.push_back(Branch{1.0, std::move(state), std::move(tag), {}});
  return MixedState(std::move(b));
}

double MixedState::total_weight() const {
  double s = 0.0;
  for (const auto& b : branches_) s += b.weight;
  return s;
}

const ModeBasis& MixedState::basis() const {
  if (branches_.empty()) throw std::logic_error("empty ensemble has no basis");
  return branches_.front().state.basis();
}

TwoQubitDensity::TwoQubitDensity(const Eigen::Matrix4cd& rho) : rho_(rho) {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
    throw InvariantViolation("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > kTolerance) {
    throw InvariantViolation("density matrix trace is not one");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kTolerance) {
    throw InvariantViolation("density matrix has a negative eigenvalue");
  }
}

double TwoQubitDensity::purity() const { return (rho_ * rho_).trace().real(); }

double TwoQubitDensity::relative_phase_vv_hh() const {
  return std::arg(rho_(3, 0));
}

namespace {

// Accumulates w * sum_env v v^dag where v is the 4-vector of polarization
// amplitudes for a fixed configuration of all other photons.
void accumulate_pair(const FockState& state, double weight, Spatial alice,
                     Spatial bob, Eigen::Matrix4cd& rho) {
  const ModeBasis& basis = state.basis();
  if (owner(alice) != Party::A || owner(bob) != Party::B) {
    throw std::invalid_argument(
        "reduce_to_polarization_pair: expects an Alice and a Bob label");
  }
  using EnvKey = std::pair<Occupation, std::pair<int, int>>;
  std::map<EnvKey, Eigen::Vector4cd> blocks;

  for (const auto& [occ, amp] : state.terms()) {
    int a_count = 0;
    int b_count = 0;
    std::size_t a_idx = 0;
    std::size_t b_idx = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (occ[i] == 0) continue;
      if (basis[i].spatial() == alice) {
        a_count += occ[i];
        a_idx = i;
      } else if (basis[i].spatial() == bob) {
        b_count += occ[i];
        b_idx = i;
      }
    }
    if (a_count != 1 || b_count != 1) {
      throw std::invalid_argument(
          "reduce_to_polarization_pair: term " +
          occupation_label(basis, occ) + " does not hold exactly one photon in " +
          std::string(to_string(alice)) + " and one in " +
          std::string(to_string(bob)));
    }
    Occupation env = occ;
    env[a_idx] = 0;
    env[b_idx] = 0;
    EnvKey key{std::move(env), {basis[a_idx].slot(), basis[b_idx].slot()}};
    const int row = 2 * static_cast<int>(basis[a_idx].pol()) +
                    static_cast<int>(basis[b_idx].pol());
    auto [it, inserted] = blocks.try_emplace(key, Eigen::Vector4cd::Zero());
    it->second(row) += amp;
  }
  for (const auto& [key, v] : blocks) rho += weight * (v * v.adjoint());
}

TwoQubitDensity finish(Eigen::Matrix4cd rho) {
  const double tr = rho.trace().real();
  if (tr < kPruneThreshold) {
    throw std::invalid_argument("reduce_to_polarization_pair: zero weight");
  }
  rho /= tr;
  // Exact Hermitian symmetrization removes rounding asymmetry only.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return TwoQubitDensity(rho);
}

}  // namespace

TwoQubitDensity reduce_to_polarization_pair(const MixedState& mixture,
                                            Spatial alice, Spatial bob) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& b : mixture.branches()) {
    accumulate_pair(b.state, b.weight, alice, bob, rho);
  }
  return finish(rho);
}

TwoQubitDensity reduce_to_polarization_pair(const FockState& state,
                                            Spatial alice, Spatial bob) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  accumulate_pair(state, 1.0, alice, bob, rho);
  return finish(rho);
}

double fidelity_phi_plus(const TwoQubitDensity& rho) {
  const auto& m = rho.matrix();
  const double f = 0.5 * (m(0, 0) + m(0, 3) + m(3, 0) + m(3, 3)).real();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace depp
