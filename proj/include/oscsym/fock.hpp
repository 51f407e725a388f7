// Truncated harmonic-oscillator basis representation of H(ig): per-mode
// hypercube truncation, position matrix elements, dense spectrum, and the
// comparison machinery against the exact normal-mode lattice.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "oscsym/chain.hpp"
#include "oscsym/linalg.hpp"
#include "oscsym/normal_modes.hpp"

namespace oscsym::fock {

using linalg::cx;

inline constexpr std::size_t kDefaultDimLimit = 4096;

struct FockBasis {
  int n_osc = 0;
  int cutoff = 0;  // per-mode maximum quantum number
  std::vector<MultiIndex> states;  // lexicographic

  std::size_t size() const { return states.size(); }

  // mixed-radix index, leftmost mode most significant
  std::size_t index_of(const MultiIndex& idx) const {
    std::size_t i = 0;
    for (int j = 0; j < n_osc; ++j) i = i * (cutoff + 1) + idx.quanta[j];
    return i;
  }
};

struct FockHamiltonian {
  FockBasis basis;
  linalg::ComplexMatrix matrix;
};

// <n_row| x |n_col> for a single mode of frequency omega.
inline double x_element(int n_row, int n_col, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("x_element: omega must be positive");
  if (n_row == n_col - 1) return std::sqrt(n_col / (2.0 * omega));
  if (n_row == n_col + 1) return std::sqrt((n_col + 1) / (2.0 * omega));
  return 0.0;
}

inline FockBasis make_fock_basis(int n_osc, int cutoff,
                                 std::size_t dim_limit = kDefaultDimLimit) {
  if (n_osc < 1) throw std::invalid_argument("make_fock_basis: n_osc must be >= 1");
  if (cutoff < 1) throw std::invalid_argument("make_fock_basis: cutoff must be >= 1");
  std::size_t dim = 1;
  for (int j = 0; j < n_osc; ++j) {
    dim *= static_cast<std::size_t>(cutoff) + 1;
    if (dim > dim_limit)
      throw std::invalid_argument("make_fock_basis: dimension limit exceeded");
  }
  FockBasis basis{n_osc, cutoff, {}};
  basis.states.reserve(dim);
  MultiIndex cur;
  cur.quanta.assign(n_osc, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    basis.states.push_back(cur);
    for (int j = n_osc - 1; j >= 0; --j) {
      if (++cur.quanta[j] <= cutoff) break;
      cur.quanta[j] = 0;
    }
  }
  return basis;
}

// Diagonal: sum_j w_j (n_j + 1/2). Off-diagonal: i*g times products of
// position elements on adjacent modes; complex symmetric by construction.
inline FockHamiltonian build_fock_hamiltonian(const OscillatorChain& chain, int cutoff,
                                              std::size_t dim_limit = kDefaultDimLimit) {
  FockBasis basis = make_fock_basis(chain.n_osc, cutoff, dim_limit);
  const std::size_t dim = basis.size();
  FockHamiltonian h{std::move(basis), linalg::ComplexMatrix(static_cast<int>(dim),
                                                            static_cast<int>(dim))};
  const cx lambda(0.0, chain.g);
  for (std::size_t a = 0; a < dim; ++a) {
    const MultiIndex& sa = h.basis.states[a];
    h.matrix(static_cast<int>(a), static_cast<int>(a)) = h0_energy(chain, sa);
    if (chain.g == 0.0) continue;
    for (int j = 0; j + 1 < chain.n_osc; ++j) {
      for (int dj : {-1, 1}) {
        const int bj = sa.quanta[j] + dj;
        if (bj < 0 || bj > h.basis.cutoff) continue;
        for (int dk : {-1, 1}) {
          const int bk = sa.quanta[j + 1] + dk;
          if (bk < 0 || bk > h.basis.cutoff) continue;
          MultiIndex sb = sa;
          sb.quanta[j] = bj;
          sb.quanta[j + 1] = bk;
          const std::size_t b = h.basis.index_of(sb);
          h.matrix(static_cast<int>(a), static_cast<int>(b)) +=
              lambda * x_element(sa.quanta[j], bj, chain.omegas[j]) *
              x_element(sa.quanta[j + 1], bk, chain.omegas[j + 1]);
        }
      }
    }
  }
  return h;
}

inline linalg::EigenResult fock_spectrum(const OscillatorChain& chain, int cutoff,
                                         std::size_t dim_limit = kDefaultDimLimit) {
  return linalg::eig_dense(build_fock_hamiltonian(chain, cutoff, dim_limit).matrix);
}

struct MatchedLevel {
  MultiIndex idx;
  cx exact;
  cx fock;
  double distance = 0.0;
};

struct MatchReport {
  std::vector<MatchedLevel> pairs;
  double max_distance = 0.0;
  double tol = 0.0;
  int unmatched = 0;
  bool passed = false;
};

// Greedy minimal-distance matching of the n_levels lowest-|Re| exact levels
// against the truncated spectrum. Unmatched levels fail the report rather
// than throwing.
inline MatchReport match_spectra(const linalg::EigenResult& fock,
                                 const std::vector<modes::EigenLevel>& exact,
                                 int n_levels, double tol) {
  if (n_levels < 1) throw std::invalid_argument("match_spectra: n_levels must be >= 1");
  if (static_cast<std::size_t>(n_levels) > exact.size())
    throw std::invalid_argument("match_spectra: fewer exact levels than requested");

  std::vector<const modes::EigenLevel*> sorted;
  sorted.reserve(exact.size());
  for (const auto& lvl : exact) sorted.push_back(&lvl);
  std::sort(sorted.begin(), sorted.end(),
            [](const modes::EigenLevel* a, const modes::EigenLevel* b) {
              const double ra = std::abs(a->energy.real()), rb = std::abs(b->energy.real());
              if (ra != rb) return ra < rb;
              if (a->energy.imag() != b->energy.imag())
                return a->energy.imag() < b->energy.imag();
              return a->idx < b->idx;
            });

  MatchReport report;
  report.tol = tol;
  std::vector<bool> used(fock.values.size(), false);
  for (int i = 0; i < n_levels; ++i) {
    const modes::EigenLevel& lvl = *sorted[i];
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < fock.values.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(fock.values[j] - lvl.energy);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) {
      ++report.unmatched;
      continue;
    }
    used[best] = true;
    report.pairs.push_back({lvl.idx, lvl.energy, fock.values[best], best_d});
    report.max_distance = std::max(report.max_distance, best_d);
  }
  report.passed = report.unmatched == 0 && report.max_distance <= tol;
  return report;
}

namespace detail {

// max over the greedy nearest matching between two equal-size multisets
inline double multiset_match_distance(std::vector<cx> a, const std::vector<cx>& b) {
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cx& va : a) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(b[j] - va);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace detail

// Finite-basis image of the spectral reflection E_n(lambda) = E_m(-lambda):
// the eigenvalue multisets of H(+ig) and H(-ig) must coincide.
inline bool spectrum_negation_check(const OscillatorChain& chain, int cutoff, double tol,
                                    std::size_t dim_limit = kDefaultDimLimit) {
  const linalg::EigenResult plus = fock_spectrum(chain, cutoff, dim_limit);
  OscillatorChain flipped = chain;
  flipped.g = -chain.g;
  const linalg::EigenResult minus = fock_spectrum(flipped, cutoff, dim_limit);
  return detail::multiset_match_distance(plus.values, minus.values) <= tol;
}

}  // namespace oscsym::fock
