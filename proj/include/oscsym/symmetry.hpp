// Signed-permutation operators on chain coordinates, their antiunitary
// extensions W*T, commutant/anticommutant classification against the chain
// Hamiltonian, group closure with Cayley tables, and point-group labels.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscsym/chain.hpp"
#include "oscsym/linalg.hpp"

namespace oscsym::sym {

// Coordinate action x_j -> s_j * x_{perm[j]}; as a matrix, S[j][perm[j]] = s_j.
struct SignedPermutation {
  std::vector<int> perm;          // 0-based
  std::vector<std::int8_t> signs; // each +1 or -1

  int size() const { return static_cast<int>(perm.size()); }

  static SignedPermutation identity(int n) {
    SignedPermutation s;
    s.perm.resize(n);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.signs.assign(n, 1);
    return s;
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (perm[i] != i || signs[i] != 1) return false;
    return true;
  }

  linalg::ComplexMatrix to_matrix() const {
    linalg::ComplexMatrix m(size(), size());
    for (int j = 0; j < size(); ++j) m(j, perm[j]) = static_cast<double>(signs[j]);
    return m;
  }

  friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    return a.perm == b.perm && a.signs == b.signs;
  }
  friend bool operator<(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.perm != b.perm) return a.perm < b.perm;
    return a.signs < b.signs;
  }
};

// compose(a, b): apply b to coordinates first, then a; equals the matrix
// product S_a * S_b.
inline SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compose: dimension mismatch");
  const int n = a.size();
  SignedPermutation r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int i = 0; i < n; ++i) {
    r.perm[i] = b.perm[a.perm[i]];
    r.signs[i] = static_cast<std::int8_t>(a.signs[i] * b.signs[a.perm[i]]);
  }
  return r;
}

inline SignedPermutation inverse(const SignedPermutation& s) {
  const int n = s.size();
  SignedPermutation r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int i = 0; i < n; ++i) {
    r.perm[s.perm[i]] = i;
    r.signs[s.perm[i]] = s.signs[i];
  }
  return r;
}

// Unitary part plus an optional time-reversal factor (complex conjugation).
// T commutes with every signed permutation, so composition only XORs the flag.
struct AntiunitaryOp {
  SignedPermutation unitary_part;
  bool conjugates = false;

  friend bool operator==(const AntiunitaryOp& a, const AntiunitaryOp& b) {
    return a.conjugates == b.conjugates && a.unitary_part == b.unitary_part;
  }
  friend bool operator<(const AntiunitaryOp& a, const AntiunitaryOp& b) {
    if (a.conjugates != b.conjugates) return a.conjugates < b.conjugates;
    return a.unitary_part < b.unitary_part;
  }
};

inline AntiunitaryOp compose(const AntiunitaryOp& a, const AntiunitaryOp& b) {
  return AntiunitaryOp{compose(a.unitary_part, b.unitary_part),
                       a.conjugates != b.conjugates};
}

// The canonical coordinate operators for the chain coupling:
// U1 identity, U2 global sign flip, U3 reversal, U4 = U2 U3 leave the coupling
// invariant; W1, W2 alternate signs and negate it, W3 = U3 W1, W4 = U3 W2.
// For a single oscillator there is no coupling; only U1, U2 are returned.
inline std::map<std::string, SignedPermutation> canonical_generators(int n_osc) {
  if (n_osc < 1) throw std::invalid_argument("canonical_generators: n_osc must be >= 1");
  std::map<std::string, SignedPermutation> gens;
  const SignedPermutation id = SignedPermutation::identity(n_osc);

  SignedPermutation u2 = id;
  u2.signs.assign(n_osc, -1);
  gens["U1"] = id;
  gens["U2"] = u2;
  if (n_osc == 1) return gens;

  SignedPermutation u3 = id;
  for (int i = 0; i < n_osc; ++i) u3.perm[i] = n_osc - 1 - i;
  gens["U3"] = u3;
  gens["U4"] = compose(u2, u3);

  SignedPermutation w1 = id, w2 = id;
  for (int i = 0; i < n_osc; ++i) {
    // 1-based site index j = i + 1: W1 sign (-1)^j, W2 sign (-1)^(j+1)
    w1.signs[i] = static_cast<std::int8_t>((i % 2 == 0) ? -1 : 1);
    w2.signs[i] = static_cast<std::int8_t>((i % 2 == 0) ? 1 : -1);
  }
  gens["W1"] = w1;
  gens["W2"] = w2;
  gens["W3"] = compose(u3, w1);
  gens["W4"] = compose(u3, w2);
  return gens;
}

// Matrix action on the quadratic form: M -> S (M or M*) S^T. The kinetic term
// is invariant under any signed permutation and under T, so this captures the
// full Hamiltonian transformation.
inline QuadraticForm conjugate_form(const QuadraticForm& m, const SignedPermutation& s,
                                    bool conj) {
  if (m.dim != s.size()) throw std::invalid_argument("conjugate_form: dimension mismatch");
  const int n = m.dim;
  QuadraticForm out{n, linalg::ComplexMatrix(n, n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      linalg::cx v = m.entries(s.perm[i], s.perm[k]);
      if (conj) v = std::conj(v);
      out.entries(i, k) = static_cast<double>(s.signs[i] * s.signs[k]) * v;
    }
  return out;
}

enum class CommutantClass { InG, InSW, Neither };

inline std::string to_string(CommutantClass c) {
  switch (c) {
    case CommutantClass::InG: return "InG";
    case CommutantClass::InSW: return "InSW";
    default: return "Neither";
  }
}

// InG: fixes both the uncoupled form and the coupling pattern.
// InSW: fixes the uncoupled form and negates the coupling.
// All comparisons are exact: the transform only permutes entries and flips signs.
inline CommutantClass commutant_class(const SignedPermutation& op,
                                      const OscillatorChain& chain) {
  if (op.size() != chain.n_osc)
    throw std::invalid_argument("commutant_class: dimension mismatch");
  const int n = chain.n_osc;

  OscillatorChain uncoupled = chain;
  uncoupled.g = 0.0;
  const QuadraticForm m0 = quadratic_form(uncoupled);
  if (!(conjugate_form(m0, op, false).entries == m0.entries))
    return CommutantClass::Neither;

  QuadraticForm coupling{n, linalg::ComplexMatrix(n, n)};
  for (int j = 0; j + 1 < n; ++j) {
    coupling.entries(j, j + 1) = 1.0;
    coupling.entries(j + 1, j) = 1.0;
  }
  QuadraticForm negated{n, linalg::ComplexMatrix(n, n)};
  for (int j = 0; j + 1 < n; ++j) {
    negated.entries(j, j + 1) = -1.0;
    negated.entries(j + 1, j) = -1.0;
  }
  const QuadraticForm moved = conjugate_form(coupling, op, false);
  if (moved.entries == coupling.entries) return CommutantClass::InG;
  if (moved.entries == negated.entries) return CommutantClass::InSW;
  return CommutantClass::Neither;
}

struct GroupTable {
  std::vector<AntiunitaryOp> elements;
  std::vector<std::vector<int>> cayley;  // cayley[i][j] = index of e_i * e_j
  std::string label;
};

namespace detail {

inline int find_element(const std::vector<AntiunitaryOp>& elems, const AntiunitaryOp& x) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == x) return static_cast<int>(i);
  return -1;
}

inline std::vector<int> element_orders(const GroupTable& t) {
  const int n = static_cast<int>(t.elements.size());
  int id = -1;
  for (int i = 0; i < n; ++i)
    if (t.elements[i].unitary_part.is_identity() && !t.elements[i].conjugates) id = i;
  if (id < 0) throw std::logic_error("group table has no identity");
  std::vector<int> orders(n);
  for (int i = 0; i < n; ++i) {
    int p = i, ord = 1;
    while (p != id) {
      p = t.cayley[p][i];
      ++ord;
      if (ord > n) throw std::logic_error("element order exceeds group order");
    }
    orders[i] = ord;
  }
  return orders;
}

inline bool is_abelian(const GroupTable& t) {
  const int n = static_cast<int>(t.elements.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (t.cayley[i][j] != t.cayley[j][i]) return false;
  return true;
}

}  // namespace detail

// Classification by (order, abelianness, element-order multiset), which
// separates every group of order <= 8 arising here. D2/C2v/C2h are reported
// as the single family label D2; the order-8 dihedral family as C4v.
inline std::string classify_group(const GroupTable& table) {
  const int n = static_cast<int>(table.elements.size());
  if (n > 16) throw std::invalid_argument("classify_group: order > 16 unsupported");
  const bool abelian = detail::is_abelian(table);
  const std::vector<int> orders = detail::element_orders(table);
  const int involutions = static_cast<int>(std::count(orders.begin(), orders.end(), 2));
  const bool all_involutory =
      std::all_of(orders.begin(), orders.end(), [](int o) { return o <= 2; });

  if (n == 4 && abelian && all_involutory) return "D2";
  if (n == 8 && !abelian && involutions == 5) return "C4v";
  if (n == 8 && abelian && all_involutory) return "D2h";
  if (n == 8 && !abelian && involutions == 1) return "Q8";
  if (abelian && all_involutory && (n & (n - 1)) == 0) {
    int k = 0;
    for (int m = n; m > 1; m >>= 1) ++k;
    return "Z2^" + std::to_string(k);
  }
  std::vector<int> sorted_orders = orders;
  std::sort(sorted_orders.begin(), sorted_orders.end());
  std::string multiset;
  for (std::size_t i = 0; i < sorted_orders.size(); ++i) {
    if (i) multiset.push_back(',');
    multiset += std::to_string(sorted_orders[i]);
  }
  return "other(order=" + std::to_string(n) + ",abelian=" + (abelian ? "yes" : "no") +
         ",orders=[" + multiset + "])";
}

// Closure of a generating set under composition. Discovery order is
// deterministic; the Cayley table is verified to be a Latin square.
inline GroupTable close_group(const std::vector<AntiunitaryOp>& generators,
                              int cap = 512) {
  if (generators.empty())
    throw std::invalid_argument("close_group: need at least one generator");
  const int n = generators.front().unitary_part.size();
  for (const auto& g : generators)
    if (g.unitary_part.size() != n)
      throw std::invalid_argument("close_group: mixed dimensions");

  GroupTable table;
  for (const auto& g : generators)
    if (detail::find_element(table.elements, g) < 0) table.elements.push_back(g);

  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = table.elements.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) {
        const AntiunitaryOp p = compose(table.elements[i], table.elements[j]);
        if (detail::find_element(table.elements, p) < 0) {
          if (static_cast<int>(table.elements.size()) >= cap)
            throw std::runtime_error("close_group: closure exceeds configured cap");
          table.elements.push_back(p);
          grew = true;
        }
      }
  }

  const int order = static_cast<int>(table.elements.size());
  table.cayley.assign(order, std::vector<int>(order, -1));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const int k = detail::find_element(table.elements,
                                         compose(table.elements[i], table.elements[j]));
      if (k < 0) throw std::logic_error("close_group: closure violated");
      table.cayley[i][j] = k;
    }
  // each row and column must be a permutation; this certifies inverses
  for (int i = 0; i < order; ++i) {
    std::vector<bool> seen_row(order, false), seen_col(order, false);
    for (int j = 0; j < order; ++j) {
      if (seen_row[table.cayley[i][j]] || seen_col[table.cayley[j][i]])
        throw std::logic_error("close_group: Cayley table is not a Latin square");
      seen_row[table.cayley[i][j]] = true;
      seen_col[table.cayley[j][i]] = true;
    }
  }
  table.label = order <= 16 ? classify_group(table) : "unclassified";
  return table;
}

// True iff the antiunitary operator leaves M(ig) invariant entrywise within tol.
inline bool antiunitary_invariance_check(const AntiunitaryOp& a,
                                         const OscillatorChain& chain, double tol) {
  if (!a.conjugates)
    throw std::invalid_argument("antiunitary_invariance_check: operator must conjugate");
  const QuadraticForm m = quadratic_form(chain);
  const QuadraticForm t = conjugate_form(m, a.unitary_part, true);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      if (std::abs(t.entries(i, j) - m.entries(i, j)) > tol) return false;
  return true;
}

}  // namespace oscsym::sym
