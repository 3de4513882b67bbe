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

#include "depp/optics.hpp"

#include <cmath>
#include <set>

namespace depp {

ModeMap hwp(const ModeBasis& basis, Spatial spatial) {
  if (!basis.contains(spatial)) {
    throw std::invalid_argument("hwp: label " +
                                std::string(to_string(spatial)) +
                                " not in basis");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ModeId& m = basis[i];
    std::size_t j = i;
    if (m.spatial() == spatial) {
      const Pol flipped = m.pol() == Pol::H ? Pol::V : Pol::H;
      j = basis.index_of(ModeId(spatial, flipped, m.slot()));
    }
    u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return ModeMap(basis, basis, std::move(u));
}

ModeMap pbs(const ModeBasis& basis, Spatial in_upper, Spatial in_lower,
            Spatial out_transmit, Spatial out_reflect) {
  const std::set<Spatial> labels{in_upper, in_lower, out_transmit,
                                 out_reflect};
  if (labels.size() != 4) {
    throw std::invalid_argument("pbs: spatial labels must be distinct");
  }
  if (!basis.contains(in_upper) || !basis.contains(in_lower)) {
    throw std::invalid_argument("pbs: input label not in basis");
  }
  if (basis.contains(out_transmit) || basis.contains(out_reflect)) {
    throw std::invalid_argument("pbs: output label collides with basis");
  }

  auto rename = [&](Spatial s) {
    if (s == in_upper) return out_transmit;
    if (s == in_lower) return out_reflect;
    return s;
  };
  std::vector<ModeId> out_modes;
  out_modes.reserve(basis.size());
  for (const auto& m : basis.modes()) {
    out_modes.emplace_back(rename(m.spatial()), m.pol(), m.slot());
  }
  ModeBasis out(std::move(out_modes));

  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ModeId& m = basis[i];
    Spatial target = m.spatial();
    if (m.spatial() == in_upper) {
      target = m.pol() == Pol::H ? out_transmit : out_reflect;
    } else if (m.spatial() == in_lower) {
      target = m.pol() == Pol::H ? out_reflect : out_transmit;
    }
    const std::size_t j = out.index_of(ModeId(target, m.pol(), m.slot()));
    u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return ModeMap(basis, std::move(out), std::move(u));
}

ModeMap phase_shift(const ModeBasis& basis, std::span<const ModeId> modes,
                    double phi) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const Complex factor = std::polar(1.0, phi);
  std::set<std::size_t> done;
  for (const auto& m : modes) {
    const std::size_t i = basis.index_of(m);
    if (!done.insert(i).second) continue;
    const auto k = static_cast<Eigen::Index>(i);
    u(k, k) = factor;
  }
  return ModeMap(basis, basis, std::move(u));
}

ModeMap compose(std::span<const ModeMap> maps) {
  if (maps.empty()) throw std::invalid_argument("compose: no maps");
  Eigen::MatrixXcd total = maps.front().matrix();
  for (std::size_t k = 1; k < maps.size(); ++k) {
    if (!(maps[k].input() == maps[k - 1].output())) {
      throw std::invalid_argument("compose: map " + std::to_string(k) +
                                  " input basis does not match previous output");
    }
    total = maps[k].matrix() * total;
  }
  return ModeMap(maps.front().input(), maps.back().output(), std::move(total));
}

void ElementSpec::validate() const {
  switch (kind) {
    case ElementKind::hwp:
      if (spatial.size() != 1) {
        throw std::invalid_argument("HWP acts on exactly one spatial label");
      }
      break;
    case ElementKind::pbs:
      if (spatial.size() != 4) {
        throw std::invalid_argument("PBS needs two input and two output labels");
      }
      break;
    case ElementKind::phase:
      if (!spatial.empty()) {
        throw std::invalid_argument("PHASE acts on modes, not labels");
      }
      if (!std::isfinite(phase)) {
        throw std::invalid_argument("PHASE angle must be finite");
      }
      break;
  }
}

ModeMap realize(const ElementSpec& spec, const ModeBasis& basis) {
  spec.validate();
  switch (spec.kind) {
    case ElementKind::hwp:
      return hwp(basis, spec.spatial[0]);
    case ElementKind::pbs:
      return pbs(basis, spec.spatial[0], spec.spatial[1], spec.spatial[2],
                 spec.spatial[3]);
    case ElementKind::phase:
      return phase_shift(basis, spec.modes, spec.phase);
  }
  throw std::logic_error("unreachable element kind");
}

}  // namespace depp
