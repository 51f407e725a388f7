// Oscillator-chain model: H = 1/2 sum_j (p_j^2 + w_j^2 x_j^2) + ig sum_j x_j x_{j+1}.
// Units hbar = m = 1 throughout. The coupling is stored as the real magnitude g;
// the Hamiltonian coupling constant is lambda = i*g.

#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscsym/linalg.hpp"

namespace oscsym {

struct OscillatorChain {
  int n_osc = 0;
  std::vector<double> omegas;
  double g = 0.0;
};

struct MultiIndex {
  std::vector<int> quanta;

  int size() const { return static_cast<int>(quanta.size()); }
  int total() const { return std::accumulate(quanta.begin(), quanta.end(), 0); }

  bool palindromic() const {
    for (int i = 0, j = size() - 1; i < j; ++i, --j)
      if (quanta[i] != quanta[j]) return false;
    return true;
  }

  std::string to_string(char sep = ';') const {
    std::string s;
    for (int i = 0; i < size(); ++i) {
      if (i) s.push_back(sep);
      s += std::to_string(quanta[i]);
    }
    return s;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.quanta == b.quanta;
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.quanta < b.quanta;
  }
};

// N x N complex symmetric matrix M with H = 1/2 p.p + 1/2 x.M.x
struct QuadraticForm {
  int dim = 0;
  linalg::ComplexMatrix entries;
};

inline OscillatorChain build_chain(int n_osc, std::vector<double> omegas, double g) {
  if (n_osc < 1) throw std::invalid_argument("build_chain: need at least one oscillator");
  if (static_cast<int>(omegas.size()) != n_osc)
    throw std::invalid_argument("build_chain: omega list length does not match n_osc");
  for (double w : omegas)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("build_chain: frequencies must be positive and finite");
  if (!std::isfinite(g)) throw std::invalid_argument("build_chain: g must be finite");
  return OscillatorChain{n_osc, std::move(omegas), g};
}

// Tridiagonal form: diagonal w_j^2, super/sub-diagonal i*g.
inline QuadraticForm quadratic_form(const OscillatorChain& chain) {
  const int n = chain.n_osc;
  QuadraticForm f{n, linalg::ComplexMatrix(n, n)};
  for (int j = 0; j < n; ++j) {
    f.entries(j, j) = chain.omegas[j] * chain.omegas[j];
    if (j + 1 < n) {
      const linalg::cx lam(0.0, chain.g);
      f.entries(j, j + 1) = lam;
      f.entries(j + 1, j) = lam;
    }
  }
  return f;
}

inline double h0_energy(const OscillatorChain& chain, const MultiIndex& idx) {
  if (idx.size() != chain.n_osc)
    throw std::invalid_argument("h0_energy: index length does not match chain");
  double e = 0.0;
  for (int j = 0; j < chain.n_osc; ++j) e += chain.omegas[j] * (idx.quanta[j] + 0.5);
  return e;
}

// Number of multi-indices with total quanta k: binomial(k + N - 1, N - 1).
// Equal-frequency degeneracy count; exact integer arithmetic with overflow check.
inline std::uint64_t level_degeneracy(int n_osc, int k) {
  if (n_osc < 1) throw std::invalid_argument("level_degeneracy: n_osc must be >= 1");
  if (k < 0) throw std::invalid_argument("level_degeneracy: k must be >= 0");
  std::uint64_t res = 1;
  for (int i = 1; i <= n_osc - 1; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(k) + i;
    if (res > std::numeric_limits<std::uint64_t>::max() / num)
      throw std::overflow_error("level_degeneracy: overflow");
    res = res * num / i;  // exact: res*num is divisible by i at each step
  }
  return res;
}

// All compositions of k into n_osc non-negative parts, lexicographic order.
inline std::vector<MultiIndex> enumerate_multi_indices(int n_osc, int k) {
  if (n_osc < 1) throw std::invalid_argument("enumerate_multi_indices: n_osc must be >= 1");
  if (k < 0) throw std::invalid_argument("enumerate_multi_indices: k must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(n_osc, 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n_osc - 1) {
      cur[pos] = rem;
      out.push_back(MultiIndex{cur});
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace oscsym
