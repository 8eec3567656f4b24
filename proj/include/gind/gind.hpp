#pragma once

#include <utility>
#include <variant>

#include "gind/norms.hpp"

namespace gind {

// ---------------------------------------------------------------------------
// Generalized induced norm ||A|| = max { ||Ax||_c : ||x||_d = 1 } with
// certified enclosures. Exact dispatch:
//
//   domain reduces to l1          max over columns
//   domain and codomain reduce l2 top singular value
//   domain linf, all data real    2^(n-1) sign vectors (real_restrict only)
//   A = I, codomain = g*domain    the constant g read off structurally
//
// Everything else: multistart supergradient ascent (lower, witnessed) plus
// the sandwich bound through l2 (upper).
// ---------------------------------------------------------------------------

enum class Method {
  ExactColumn,
  ExactSpectral,
  ExactSignEnum,
  ExactProportional,
  AscentSandwich,
};

const char* method_name(Method m);

struct GindResult {
  double lower = 0.0;   // achieved by witness
  double upper = 0.0;   // certified bound
  Vector witness;       // unit vector in the domain norm
  Method method = Method::AscentSandwich;
};

struct GindOptions {
  // Restrict the maximization to real vectors; requires all-real data.
  // Enables the sign-enumeration path for linf domains.
  bool real_restrict = false;
  // Skip every exact path (used to cross-validate the ascent).
  bool force_generic = false;
  int random_starts = 8;
  int ascent_iteration_cap = 400;
};

GindResult gind(const Matrix& a, const NormSpec& domain, const NormSpec& codomain, Seed seed,
                const GindOptions& opts = {});

// Equivalence constant R_{i,j} = max ||x||_i / ||x||_j, computed as the
// induced norm of the identity from j into i. Same certification contract.
GindResult ratio(const NormSpec& i, const NormSpec& j, int dim, Seed seed,
                 const GindOptions& opts = {});

// Certified upper bounds on R(spec, l2) and R(l2, spec), read off the spec
// structure. Exact for pure Lp layers and scalar/l2 transforms; these are
// what the sandwich upper bound is built from.
double equiv_upper_to_l2(const NormSpec& spec, int dim);
double equiv_upper_from_l2(const NormSpec& spec, int dim);

// ---------------------------------------------------------------------------
// Column operators: C_{x,j} has x in column j and zeros elsewhere; C_x has x
// in every column. Indices are 0-based.
// ---------------------------------------------------------------------------

Matrix column_operator(const Vector& x, int j);
Matrix column_sum_operator(const Vector& x);

// Closed-form induced norms of the column operators: (alpha_j * ||x||_c,
// alpha * ||x||_c) with alpha_j the domain dual norm at e_j and alpha the
// domain dual norm at the all-ones vector.
std::pair<double, double> predicted_column_norms(const Vector& x, int j, const NormSpec& d,
                                                 const NormSpec& c);

// ---------------------------------------------------------------------------
// Classical matrix norms.
// ---------------------------------------------------------------------------

struct ClassicalNorms {
  double col_sum;    // max column abs sum, induced by l1
  double row_sum;    // max row abs sum, induced by linf
  double spectral;   // top singular value, induced by l2
  double entry_sum;  // sum of all |a_ij|
  double entry_max;  // max |a_ij| (not an algebra norm)
};

ClassicalNorms classical_norms(const Matrix& a);

enum class ClassicalTag { ColSum, RowSum, Spectral, EntrySum, EntryMax };

// A matrix norm for the estimators below: a classical tag or a g-ind pair
// (domain, codomain), evaluated through gind's witnessed lower bound.
using MatrixNormId = std::variant<ClassicalTag, std::pair<NormSpec, NormSpec>>;

double matrix_norm_value(const MatrixNormId& id, const Matrix& a, Seed seed);

// ---------------------------------------------------------------------------
// Submultiplicativity defect: sampled sup of ||AB|| / (||A|| ||B||).
// ---------------------------------------------------------------------------

struct DefectEstimate {
  double value = 0.0;
  Matrix witness_a;
  Matrix witness_b;
};

// ||ab|| / (||a|| ||b||) under the given norm, or -1 when a factor norm falls
// below 1e-12. submult_defect evaluates every candidate through the fixed
// stream derive(seed, 7777), so its value is reproducible from the witnesses.
double defect_ratio(const MatrixNormId& id, const Matrix& a, const Matrix& b, Seed eval_seed);

DefectEstimate submult_defect(const MatrixNormId& id, int n, int trials, Seed seed);

}  // namespace gind
