#pragma once

// Exact identity suite over the Schur, vertex and tau-table layers. Each
// check reports the first counterexample with both sides in canonical text.

#include <vector>

#include "toda/opalg.hpp"
#include "toda/vertex.hpp"

namespace toda {

struct IdentityOptions {
  int vertex_weight = 6;    // |nu| + |nubar| for def = hook
  int symmetry_weight = 5;  // |nu| + |nubar| for the two vertex symmetries
  int schur_weight = 5;     // |mu| for the negation identities
  int shift_degree = 4;     // tau-table degree for the s-shift check
  std::vector<Rational> shifts{frac(1, 2), frac(1, 3)};
  std::vector<TauParams> shift_params{{1, 1, 1}, {1, 2, 1}, {2, 1, -1}};
  bool flip_sign = false;  // negative control: drops the sign in the q-inversion symmetry
};

RelationCheck check_vertex_expressions(int weight);
RelationCheck check_vertex_transposition(int weight);
RelationCheck check_vertex_inversion(int weight, bool flip_sign = false);
RelationCheck check_schur_negation(int weight);
RelationCheck check_skew_negation(int weight);
RelationCheck check_schur_structure(int weight);
RelationCheck check_special_points(int weight, int kmax = 4);
RelationCheck check_tau_exponents(const TauParams& p, int degree);
RelationCheck check_tau_shift(const TauParams& p, int degree, const std::vector<Rational>& shifts);

/// Runs every check above; throws std::invalid_argument on negative weights.
Report run_identities(const IdentityOptions& opt);

}  // namespace toda
