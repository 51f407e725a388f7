// Exact spectrum of H(ig) through the normal modes of the quadratic form:
// mode frequencies Omega_k = sqrt(mu_k), the conjugate-pairing involution on
// modes, and the reality classification of each lattice level
// E = sum_k (n_k + 1/2) Omega_k.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscsym/chain.hpp"
#include "oscsym/linalg.hpp"

namespace oscsym::modes {

using linalg::cx;

struct NormalModeSpectrum {
  std::vector<cx> mu;           // eigenvalues of M(ig), sorted (Re, Im)
  std::vector<cx> omega_modes;  // principal square roots, Re >= 0
  std::vector<int> pairing;     // involution k <-> k' with mu_k' ~ conj(mu_k)
  bool unstable = false;        // some mode has Re mu <= 0 with negligible Im
  double tol = 0.0;             // pairing tolerance used
};

enum class Reality { Real, ComplexPaired };

inline std::string to_string(Reality r) {
  return r == Reality::Real ? "Real" : "ComplexPaired";
}

struct EigenLevel {
  MultiIndex idx;
  cx energy;
  Reality reality = Reality::Real;
  std::optional<MultiIndex> partner;
};

namespace detail {

// Principal branch: Re >= 0; on the imaginary axis take Im >= 0.
inline cx principal_sqrt(const cx& z) {
  cx r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

inline double reality_tol(const cx& e) { return 1e-9 * (1.0 + std::abs(e.real())); }

}  // namespace detail

inline NormalModeSpectrum mode_frequencies(const OscillatorChain& chain) {
  const int n = chain.n_osc;
  std::vector<cx> diag(n), off(std::max(0, n - 1));
  for (int j = 0; j < n; ++j) diag[j] = chain.omegas[j] * chain.omegas[j];
  for (int j = 0; j + 1 < n; ++j) off[j] = cx(0.0, chain.g);

  NormalModeSpectrum spec;
  spec.mu = linalg::eig_tridiag_complex_symmetric(diag, off).values;

  double mumax = 0.0;
  for (const cx& m : spec.mu) mumax = std::max(mumax, std::abs(m));
  spec.tol = 1e-9 * (mumax > 0.0 ? mumax : 1.0);

  spec.omega_modes.resize(n);
  for (int k = 0; k < n; ++k) {
    const cx& m = spec.mu[k];
    if (m.real() <= 0.0 && std::abs(m.imag()) <= spec.tol) spec.unstable = true;
    spec.omega_modes[k] = detail::principal_sqrt(m);
  }

  // greedy nearest-conjugate matching, ties broken by index order
  spec.pairing.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    if (spec.pairing[k] >= 0) continue;
    const cx target = std::conj(spec.mu[k]);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = k; j < n; ++j) {
      if (spec.pairing[j] >= 0) continue;
      const double d = std::abs(spec.mu[j] - target);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0 || best_d > spec.tol)
      throw std::runtime_error(
          "mode_frequencies: no conjugate partner within tolerance (eigensolver "
          "inaccuracy?)");
    spec.pairing[k] = best;
    spec.pairing[best] = k;
  }
  return spec;
}

inline cx level_energy(const NormalModeSpectrum& spec, const MultiIndex& idx) {
  if (spec.unstable)
    throw std::runtime_error("level_energy: unstable mode spectrum, lattice undefined");
  if (idx.size() != static_cast<int>(spec.mu.size()))
    throw std::invalid_argument("level_energy: index length does not match mode count");
  cx e = 0.0;
  for (int k = 0; k < idx.size(); ++k)
    e += (idx.quanta[k] + 0.5) * spec.omega_modes[k];
  return e;
}

// Real iff the quanta are symmetric under the conjugate pairing; otherwise the
// partner level (quanta swapped across the pairing) carries the conjugate energy.
inline EigenLevel classify_level(const NormalModeSpectrum& spec, const MultiIndex& idx) {
  EigenLevel lvl;
  lvl.idx = idx;
  lvl.energy = level_energy(spec, idx);

  bool symmetric = true;
  for (int k = 0; k < idx.size(); ++k)
    if (idx.quanta[k] != idx.quanta[spec.pairing[k]]) {
      symmetric = false;
      break;
    }

  const double rtol = detail::reality_tol(lvl.energy);
  if (symmetric) {
    if (std::abs(lvl.energy.imag()) > rtol)
      throw std::runtime_error(
          "classify_level: pairing-symmetric level has complex energy (branch or "
          "pairing bug)");
    lvl.reality = Reality::Real;
  } else {
    MultiIndex partner;
    partner.quanta.resize(idx.size());
    for (int k = 0; k < idx.size(); ++k) partner.quanta[k] = idx.quanta[spec.pairing[k]];
    const cx pe = level_energy(spec, partner);
    if (std::abs(pe - std::conj(lvl.energy)) > rtol * (1.0 + std::abs(lvl.energy)))
      throw std::runtime_error(
          "classify_level: partner energy is not the complex conjugate");
    lvl.reality = Reality::ComplexPaired;
    lvl.partner = std::move(partner);
  }
  return lvl;
}

inline std::vector<EigenLevel> spectrum_lattice(const NormalModeSpectrum& spec,
                                                int k_max) {
  if (k_max < 0) throw std::invalid_argument("spectrum_lattice: k_max must be >= 0");
  const int n = static_cast<int>(spec.mu.size());
  std::vector<EigenLevel> out;
  for (int k = 0; k <= k_max; ++k)
    for (const MultiIndex& idx : enumerate_multi_indices(n, k))
      out.push_back(classify_level(spec, idx));
  std::sort(out.begin(), out.end(), [](const EigenLevel& a, const EigenLevel& b) {
    if (a.energy.real() != b.energy.real()) return a.energy.real() < b.energy.real();
    if (a.energy.imag() != b.energy.imag()) return a.energy.imag() < b.energy.imag();
    return a.idx < b.idx;
  });
  return out;
}

}  // namespace oscsym::modes
