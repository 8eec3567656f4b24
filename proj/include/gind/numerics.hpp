#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gind {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors. Every failure mode carries a stable name; the CLI surfaces the name
// verbatim, so keep these spellings fixed.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, int pivot_index)
      : Error("SingularMatrix", what), pivot_index(pivot_index) {}
  int pivot_index;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double best)
      : Error("ConvergenceFailure", what), best_estimate(best) {}
  double best_estimate;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class ZeroVector : public Error {
 public:
  explicit ZeroVector(const std::string& what) : Error("ZeroVector", what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("ParseError", what), position(position) {}
  std::size_t position;
};

class InvalidExponent : public Error {
 public:
  explicit InvalidExponent(const std::string& what) : Error("InvalidExponent", what) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& what) : Error("IndexOutOfRange", what) {}
};

class DegenerateWitness : public Error {
 public:
  explicit DegenerateWitness(const std::string& what) : Error("DegenerateWitness", what) {}
};

class BudgetTooSmall : public Error {
 public:
  explicit BudgetTooSmall(const std::string& what) : Error("BudgetTooSmall", what) {}
};

class FileError : public Error {
 public:
  explicit FileError(const std::string& what) : Error("FileError", what) {}
};

class IllConditioned : public Error {
 public:
  explicit IllConditioned(const std::string& what) : Error("IllConditioned", what) {}
};

class NotRealValued : public Error {
 public:
  explicit NotRealValued(const std::string& what) : Error("NotRealValued", what) {}
};

// ---------------------------------------------------------------------------
// Seeded RNG. All randomness in the library flows through this wrapper so
// that a given seed reproduces the same draws bit for bit. The uniform and
// gaussian transforms are hand-rolled (std::*_distribution is not pinned by
// the standard).
// ---------------------------------------------------------------------------

struct Seed {
  std::uint64_t value = 0;
};

// splitmix64; used to derive independent per-stream seeds.
std::uint64_t mix64(std::uint64_t x);

inline Seed derive(Seed s, std::uint64_t stream) {
  return Seed{mix64(s.value ^ (0x9e3779b97f4a7c15ull * (stream + 1)))};
}

class Rng {
 public:
  explicit Rng(Seed s) : eng_(mix64(s.value)) {}

  double uniform01();   // in (0,1)
  double gaussian();    // standard normal via Box-Muller
  cplx cgaussian();     // standard complex normal
  int index(int n);     // uniform in [0, n)

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Dense complex vectors and matrices, row major. Sizes stay small (n <= 64);
// everything is plain loops.
// ---------------------------------------------------------------------------

class Vector {
 public:
  Vector() = default;
  explicit Vector(int dim);
  Vector(std::initializer_list<cplx> xs);
  static Vector from(std::vector<cplx> xs);

  int dim() const { return static_cast<int>(e_.size()); }
  cplx& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<cplx>& entries() const { return e_; }

 private:
  std::vector<cplx> e_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<cplx> data);
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<cplx>& entries() const { return e_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> e_;
};

bool operator==(const Vector& a, const Vector& b);
bool operator==(const Matrix& a, const Matrix& b);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(cplx s, const Vector& v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, const Matrix& m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

Matrix transpose(const Matrix& m);
Matrix conj_transpose(const Matrix& m);
Vector conjugated(const Vector& v);

// y z^T under the bilinear pairing: no conjugation on either factor.
Matrix outer_bilinear(const Vector& y, const Vector& z);

cplx dot_bilinear(const Vector& a, const Vector& b);   // sum a_i b_i
cplx dot_conj(const Vector& a, const Vector& b);       // sum conj(a_i) b_i
double norm2(const Vector& v);
double max_abs(const Vector& v);
double max_abs(const Matrix& m);
bool is_real(const Vector& v);
bool is_real(const Matrix& m);
bool is_identity(const Matrix& m);

// ---------------------------------------------------------------------------
// Core algorithms.
// ---------------------------------------------------------------------------

// Inverse by Gaussian elimination with partial pivoting on [M | I]. A pivot
// below 1e-14 * max|entry| raises SingularMatrix with the failing index.
Matrix invert(const Matrix& m);

// Cheap condition estimate: max-column-sum norm of M times that of M^-1.
// Propagates SingularMatrix.
double condition_estimate(const Matrix& m);

struct TopSingular {
  double sigma = 0.0;
  Vector right;      // unit l2 right singular direction
  bool converged = false;
  int iterations = 0;
};

// Largest singular value via power iteration on A*A. Deterministic start
// (all-ones normalized); a seeded verification restart guards against starts
// lying in a non-dominant invariant subspace, and up to 10 seeded restarts
// run when the iteration stalls. Never throws; check .converged.
TopSingular power_top_singular(const Matrix& a, int iteration_cap = 100000);

// Same, but throws ConvergenceFailure (carrying the best estimate) when the
// iteration does not reach relative tolerance 1e-10.
double max_singular_value(const Matrix& a, int iteration_cap = 100000);

// Seeded Haar-style unitary: orthonormalized complex gaussian matrix.
// Same seed, same matrix, bit for bit. ||U*U - I||_max <= 1e-12.
Matrix random_unitary(int n, Seed seed);

Vector random_vector(int n, Rng& rng);
Vector random_real_vector(int n, Rng& rng);
Matrix random_matrix(int rows, int cols, Rng& rng);
Matrix random_real_matrix(int rows, int cols, Rng& rng);

}  // namespace gind
