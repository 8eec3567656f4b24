#include "gind/norms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <variant>

#include "json.hpp"

namespace gind {

namespace {

constexpr int kMaxDepth = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

cplx phase_of(cplx z) {
  const double a = std::abs(z);
  if (a == 0.0) return cplx(1, 0);
  return z / a;
}

}  // namespace

struct LpNode {
  double p;
};
struct LInfNode {};
struct TransformedNode {
  Matrix k;
  Matrix k_inv;
  std::shared_ptr<const NormSpec::Node> base;
};

struct NormSpec::Node {
  std::variant<LpNode, LInfNode, TransformedNode> v;
};

NormSpec NormSpec::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidExponent("lp exponent must be a finite value >= 1, got " + std::to_string(p));
  }
  auto n = std::make_shared<Node>();
  n->v = LpNode{p};
  return NormSpec(std::move(n));
}

NormSpec NormSpec::linf() {
  auto n = std::make_shared<Node>();
  n->v = LInfNode{};
  return NormSpec(std::move(n));
}

NormSpec NormSpec::scaled(double c, const NormSpec& base, int dim) {
  if (c == 0.0 || !std::isfinite(c)) throw IllConditioned("scale factor must be finite and nonzero");
  Matrix k(dim, dim);
  for (int i = 0; i < dim; ++i) k.at(i, i) = c;
  return transformed(k, base);
}

NormSpec NormSpec::transformed(const Matrix& k, const NormSpec& base) {
  if (k.rows() != k.cols()) throw DimensionMismatch("transform matrix must be square");
  if (auto bd = base.dim(); bd && *bd != k.rows()) {
    throw DimensionMismatch("transform dimension does not match base norm");
  }
  if (base.depth() + 1 > kMaxDepth) {
    throw ParseError("norm spec nesting exceeds depth " + std::to_string(kMaxDepth), 0);
  }
  Matrix k_inv = invert(k);  // SingularMatrix propagates
  const double cond = [&] {
    double nk = 0.0, ni = 0.0;
    for (int j = 0; j < k.cols(); ++j) {
      double sk = 0.0, si = 0.0;
      for (int i = 0; i < k.rows(); ++i) {
        sk += std::abs(k.at(i, j));
        si += std::abs(k_inv.at(i, j));
      }
      nk = std::max(nk, sk);
      ni = std::max(ni, si);
    }
    return nk * ni;
  }();
  if (!(cond <= 1e12)) {
    throw IllConditioned("transform condition estimate " + std::to_string(cond) + " exceeds 1e12");
  }
  auto n = std::make_shared<Node>();
  n->v = TransformedNode{k, std::move(k_inv), base.node_};
  return NormSpec(std::move(n));
}

bool NormSpec::is_lp() const { return std::holds_alternative<LpNode>(node_->v); }
bool NormSpec::is_linf() const { return std::holds_alternative<LInfNode>(node_->v); }
bool NormSpec::is_transformed() const { return std::holds_alternative<TransformedNode>(node_->v); }

double NormSpec::p() const { return std::get<LpNode>(node_->v).p; }
const Matrix& NormSpec::k() const { return std::get<TransformedNode>(node_->v).k; }
const Matrix& NormSpec::k_inverse() const { return std::get<TransformedNode>(node_->v).k_inv; }
NormSpec NormSpec::base() const { return NormSpec(std::get<TransformedNode>(node_->v).base); }

int NormSpec::depth() const {
  int d = 1;
  const Node* cur = node_.get();
  while (const auto* t = std::get_if<TransformedNode>(&cur->v)) {
    ++d;
    cur = t->base.get();
  }
  return d;
}

std::optional<int> NormSpec::dim() const {
  if (const auto* t = std::get_if<TransformedNode>(&node_->v)) return t->k.rows();
  return std::nullopt;
}

bool NormSpec::real_data() const {
  const Node* cur = node_.get();
  while (const auto* t = std::get_if<TransformedNode>(&cur->v)) {
    if (!is_real(t->k)) return false;
    cur = t->base.get();
  }
  return true;
}

std::string NormSpec::to_string() const {
  if (is_linf()) return "linf";
  if (is_lp()) {
    const double pp = p();
    if (pp == 1.0) return "l1";
    if (pp == 2.0) return "l2";
    std::ostringstream os;
    os << "lp:" << pp;
    return os.str();
  }
  const Matrix& m = k();
  // Scalar transforms render as scale:, everything else as lin:<inline>.
  bool scalar = true;
  const cplx d0 = m.rows() > 0 ? m.at(0, 0) : cplx(1, 0);
  for (int i = 0; i < m.rows() && scalar; ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != (i == j ? d0 : cplx(0, 0))) {
        scalar = false;
        break;
      }
  std::ostringstream os;
  if (scalar && d0.imag() == 0.0) {
    os << "scale:" << d0.real() << "*" << base().to_string();
  } else {
    os << "lin:[" << m.rows() << "x" << m.cols() << "]*" << base().to_string();
  }
  return os.str();
}

bool specs_equal(const NormSpec& a, const NormSpec& b) {
  const NormSpec::Node* x = a.node_.get();
  const NormSpec::Node* y = b.node_.get();
  for (;;) {
    if (x == y) return true;
    const auto* tx = std::get_if<TransformedNode>(&x->v);
    const auto* ty = std::get_if<TransformedNode>(&y->v);
    if ((tx == nullptr) != (ty == nullptr)) return false;
    if (tx) {
      if (!(tx->k == ty->k)) return false;
      x = tx->base.get();
      y = ty->base.get();
      continue;
    }
    const auto* px = std::get_if<LpNode>(&x->v);
    const auto* py = std::get_if<LpNode>(&y->v);
    if ((px == nullptr) != (py == nullptr)) return false;
    if (px) return px->p == py->p;
    return true;  // both LInf
  }
}

namespace {

// Strips scalar transform layers (K = cI exactly), accumulating |c|.
struct Stripped {
  double factor;
  NormSpec core;
};

bool is_scalar_matrix(const Matrix& m, cplx* c) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const cplx d0 = m.at(0, 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != (i == j ? d0 : cplx(0, 0))) return false;
  *c = d0;
  return true;
}

Stripped strip_scalars(NormSpec s) {
  double f = 1.0;
  while (s.is_transformed()) {
    cplx c;
    if (!is_scalar_matrix(s.k(), &c)) break;
    f *= std::abs(c);
    s = s.base();
  }
  return {f, s};
}

}  // namespace

std::optional<double> spec_proportionality(const NormSpec& a, const NormSpec& b) {
  const Stripped sa = strip_scalars(a);
  const Stripped sb = strip_scalars(b);
  if (!specs_equal(sa.core, sb.core)) return std::nullopt;
  return sa.factor / sb.factor;
}

bool is_unitarily_invariant(const NormSpec& spec, int dim) {
  if (dim <= 1) return true;
  NormSpec s = spec;
  while (s.is_transformed()) {
    // K must act as a scalar times a unitary: K*K = cI.
    const Matrix g = conj_transpose(s.k()) * s.k();
    const double c = g.rows() > 0 ? g.at(0, 0).real() : 1.0;
    Matrix ci(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i) ci.at(i, i) = c;
    if (max_abs(g - ci) > 1e-12 * std::max(1.0, c)) return false;
    s = s.base();
  }
  return s.is_lp() && s.p() == 2.0;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double lp_eval(double p, const Vector& x) {
  const int n = x.dim();
  if (n == 0) return 0.0;
  if (p == 1.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
  }
  if (p == 2.0) return norm2(x);
  const double m = max_abs(x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conj_exponent(double p) {
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

double lq_eval(double q, const Vector& x) {
  if (q == kInf) return max_abs(x);
  return lp_eval(q, x);
}

}  // namespace

double norm_eval(const NormSpec& spec, const Vector& x) {
  if (auto d = spec.dim(); d && *d != x.dim()) {
    throw DimensionMismatch("vector has dimension " + std::to_string(x.dim()) +
                            ", norm expects " + std::to_string(*d));
  }
  if (spec.is_linf()) return max_abs(x);
  if (spec.is_lp()) return lp_eval(spec.p(), x);
  return norm_eval(spec.base(), spec.k() * x);
}

double dual_norm_eval(const NormSpec& spec, const Vector& y) {
  if (auto d = spec.dim(); d && *d != y.dim()) {
    throw DimensionMismatch("vector dimension does not match norm");
  }
  if (spec.is_linf()) return lp_eval(1.0, y);
  if (spec.is_lp()) return lq_eval(conj_exponent(spec.p()), y);
  // ||y||* over base(Kx): substitute u = Kx, giving the base dual at K^-T y.
  return dual_norm_eval(spec.base(), transpose(spec.k_inverse()) * y);
}

DualVector dual_vector(const NormSpec& spec, const Vector& y) {
  if (auto d = spec.dim(); d && *d != y.dim()) {
    throw DimensionMismatch("vector dimension does not match norm");
  }
  const int n = y.dim();
  if (max_abs(y) == 0.0) throw ZeroVector("dual vector of the zero vector");

  if (spec.is_transformed()) {
    // y0 = K^T w0 where w0 is the dual vector of Ky in the base norm.
    DualVector inner = dual_vector(spec.base(), spec.k() * y);
    DualVector out;
    out.y0 = transpose(spec.k()) * inner.y0;
    out.attained = dot_bilinear(out.y0, y).real();
    return out;
  }

  Vector y0(n);
  if (spec.is_linf()) {
    // Spread mass evenly over the coordinates attaining the max modulus.
    const double m = max_abs(y);
    std::vector<int> argmax;
    for (int i = 0; i < n; ++i)
      if (std::abs(y[i]) >= m * (1.0 - 1e-12)) argmax.push_back(i);
    const double w = 1.0 / static_cast<double>(argmax.size());
    for (int i : argmax) y0[i] = w * std::conj(phase_of(y[i]));
  } else {
    const double p = spec.p();
    if (p == 1.0) {
      // Any coordinate-wise choice with modulus <= 1 works off the support;
      // phase 1 there keeps the vector informative as a supergradient.
      for (int i = 0; i < n; ++i) y0[i] = std::conj(phase_of(y[i]));
    } else {
      const double np = lp_eval(p, y);
      for (int i = 0; i < n; ++i) {
        const double a = std::abs(y[i]);
        if (a == 0.0) continue;
        y0[i] = std::conj(phase_of(y[i])) * std::pow(a / np, p - 1.0);
      }
    }
  }
  DualVector out;
  out.y0 = y0;
  out.attained = dot_bilinear(y0, y).real();
  return out;
}

Vector norm_maximizer(const NormSpec& spec, const Vector& z) {
  if (auto d = spec.dim(); d && *d != z.dim()) {
    throw DimensionMismatch("vector dimension does not match norm");
  }
  const int n = z.dim();
  if (max_abs(z) == 0.0) throw ZeroVector("maximizer against the zero functional");

  if (spec.is_transformed()) {
    // max |z^T y| with base(Ky) = 1: u = Ky, functional becomes K^-T z.
    const Matrix kit = transpose(spec.k_inverse());
    return spec.k_inverse() * norm_maximizer(spec.base(), kit * z);
  }

  Vector y(n);
  if (spec.is_linf()) {
    for (int i = 0; i < n; ++i) y[i] = std::conj(phase_of(z[i]));
    return y;
  }
  const double p = spec.p();
  if (p == 1.0) {
    int j = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(z[i]);
      if (a > best) {
        best = a;
        j = i;
      }
    }
    y[j] = std::conj(phase_of(z[j]));
    return y;
  }
  const double q = conj_exponent(p);
  const double nq = lq_eval(q, z);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(z[i]);
    if (a == 0.0) continue;
    y[i] = std::conj(phase_of(z[i])) * std::pow(a / nq, q - 1.0);
  }
  return y;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

NormSpec parse_rec(const std::string& text, std::size_t pos, int dim, int depth) {
  if (depth > kMaxDepth) throw ParseError("norm spec nesting exceeds depth 8", pos);
  const std::string rest = text.substr(pos);
  if (rest == "l1") return NormSpec::l1();
  if (rest == "l2") return NormSpec::l2();
  if (rest == "linf") return NormSpec::linf();
  if (rest.rfind("lp:", 0) == 0) {
    const std::string num = rest.substr(3);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(num, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a float after lp:", pos + 3);
    }
    if (used != num.size()) throw ParseError("trailing characters after lp exponent", pos + 3 + used);
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw InvalidExponent("lp exponent must be >= 1, got " + num);
    }
    return NormSpec::lp(p);
  }
  if (rest.rfind("scale:", 0) == 0) {
    const std::size_t star = rest.find('*');
    if (star == std::string::npos) throw ParseError("scale: requires '*<spec>'", pos + rest.size());
    const std::string num = rest.substr(6, star - 6);
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a float after scale:", pos + 6);
    }
    if (used != num.size()) throw ParseError("bad scale factor", pos + 6 + used);
    NormSpec base = parse_rec(text, pos + star + 1, dim, depth + 1);
    return NormSpec::scaled(c, base, dim);
  }
  if (rest.rfind("lin:", 0) == 0) {
    const std::size_t star = rest.find('*');
    if (star == std::string::npos) throw ParseError("lin: requires '*<spec>'", pos + rest.size());
    const std::string path = rest.substr(4, star - 4);
    if (path.empty()) throw ParseError("lin: requires a matrix file path", pos + 4);
    Matrix k = matrix_from_json_file(path);
    if (k.rows() != dim || k.cols() != dim) {
      throw DimensionMismatch("lin: matrix is " + std::to_string(k.rows()) + "x" +
                              std::to_string(k.cols()) + ", expected " + std::to_string(dim) +
                              "x" + std::to_string(dim));
    }
    NormSpec base = parse_rec(text, pos + star + 1, dim, depth + 1);
    return NormSpec::transformed(k, base);
  }
  throw ParseError("unrecognized norm spec '" + rest + "'", pos);
}

}  // namespace

NormSpec parse_norm_spec(const std::string& text, int dim) {
  if (dim < 1) throw DimensionMismatch("norm spec dimension must be >= 1");
  return parse_rec(text, 0, dim, 1);
}

// ---------------------------------------------------------------------------
// Matrix JSON
// ---------------------------------------------------------------------------

namespace {

cplx entry_from_json(const nlohmann::json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx(j[0].get<double>(), j[1].get<double>());
  }
  throw FileError("matrix entry must be a number or an [re, im] pair");
}

}  // namespace

Matrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FileError(std::string("bad matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw FileError("matrix JSON requires rows, cols and data");
  }
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows < 0 || cols < 0 || !j["data"].is_array() ||
      j["data"].size() != static_cast<std::size_t>(rows)) {
    throw FileError("matrix JSON data does not match rows");
  }
  std::vector<cplx> data;
  data.reserve(static_cast<std::size_t>(rows) * cols);
  for (const auto& row : j["data"]) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
      throw FileError("matrix JSON data does not match cols");
    }
    for (const auto& x : row) data.push_back(entry_from_json(x));
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix matrix_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return matrix_from_json_text(ss.str());
}

Vector vector_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FileError(std::string("bad vector JSON: ") + e.what());
  }
  if (!j.is_array()) throw FileError("vector JSON must be an array");
  std::vector<cplx> data;
  data.reserve(j.size());
  for (const auto& x : j) data.push_back(entry_from_json(x));
  return Vector::from(std::move(data));
}

std::string matrix_to_json_text(const Matrix& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int jj = 0; jj < m.cols(); ++jj) {
      const cplx& x = m.at(i, jj);
      row.push_back({x.real(), x.imag()});
    }
    rows.push_back(std::move(row));
  }
  j["data"] = std::move(rows);
  return j.dump();
}

}  // namespace gind
