#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gind/numerics.hpp"

namespace gind {

// ---------------------------------------------------------------------------
// NormSpec: a composable description of a vector norm on C^n.
//
//   Lp(p), 1 <= p < inf      entrywise p-norm
//   LInf                     max modulus (a distinct tag, not a large p)
//   Transformed(K, base)     x -> base(K x), K square and invertible
//
// Scaled norms c*||.|| are Transformed(cI, base). Specs are immutable values;
// copies share nodes. Nesting depth is capped at 8.
// ---------------------------------------------------------------------------

class NormSpec {
 public:
  static NormSpec lp(double p);
  static NormSpec l1() { return lp(1.0); }
  static NormSpec l2() { return lp(2.0); }
  static NormSpec linf();
  static NormSpec scaled(double c, const NormSpec& base, int dim);
  static NormSpec transformed(const Matrix& k, const NormSpec& base);

  bool is_lp() const;
  bool is_linf() const;
  bool is_transformed() const;
  double p() const;                   // only for is_lp()
  const Matrix& k() const;            // only for is_transformed()
  const Matrix& k_inverse() const;    // cached at construction
  NormSpec base() const;              // only for is_transformed()

  int depth() const;
  // Fixed dimension imposed by Transformed layers; nullopt for pure Lp/LInf.
  std::optional<int> dim() const;
  // True when every transform matrix in the spec has real entries.
  bool real_data() const;

  std::string to_string() const;

  friend bool specs_equal(const NormSpec& a, const NormSpec& b);

  struct Node;  // implementation detail, defined in norms.cpp

 private:
  explicit NormSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool specs_equal(const NormSpec& a, const NormSpec& b);

// If ||x||_a = gamma * ||x||_b for all x can be read off structurally
// (scalar transform layers over identical cores), returns gamma.
std::optional<double> spec_proportionality(const NormSpec& a, const NormSpec& b);

// Structural test for unitary invariance: l2 up to scalar (and unitary
// multiples of scalar) transforms.
bool is_unitarily_invariant(const NormSpec& spec, int dim);

// ---------------------------------------------------------------------------
// Evaluation. The dual pairing is bilinear throughout: <y, x> = sum y_i x_i
// with no conjugation; conjugation lives inside the dual vectors.
// ---------------------------------------------------------------------------

double norm_eval(const NormSpec& spec, const Vector& x);

// Dual norm ||y||* = max { |y^T x| : ||x|| = 1 }.
double dual_norm_eval(const NormSpec& spec, const Vector& y);

struct DualVector {
  Vector y0;        // y0^T y = ||y||, |y0^T x| <= ||x|| for all x
  double attained;  // the pairing value y0^T y
};

DualVector dual_vector(const NormSpec& spec, const Vector& y);

// Unit-norm maximizer of |z^T y| over the spec's unit sphere; attains the
// dual norm of z. The counterpart of dual_vector on the primal side.
Vector norm_maximizer(const NormSpec& spec, const Vector& z);

// ---------------------------------------------------------------------------
// Parsing and matrix files.
//
// Grammar: "l1" | "l2" | "linf" | "lp:<float>=1>" | "scale:<float>*<spec>"
//          | "lin:<matrix-file>*<spec>"
//
// dim fixes the ambient dimension (scale: compiles to Transformed(cI, .)).
// ---------------------------------------------------------------------------

NormSpec parse_norm_spec(const std::string& text, int dim);

// JSON matrix files: {"rows": n, "cols": m, "data": [[entry, ...], ...]}
// where entry is a number or an [re, im] pair.
Matrix matrix_from_json_file(const std::string& path);
Matrix matrix_from_json_text(const std::string& text);
Vector vector_from_json_text(const std::string& text);
std::string matrix_to_json_text(const Matrix& m);

}  // namespace gind
