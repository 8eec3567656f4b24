#include "gind/gind.hpp"

#include <algorithm>
#include <cmath>

namespace gind {

const char* method_name(Method m) {
  switch (m) {
    case Method::ExactColumn: return "ExactColumn";
    case Method::ExactSpectral: return "ExactSpectral";
    case Method::ExactSignEnum: return "ExactSignEnum";
    case Method::ExactProportional: return "ExactProportional";
    case Method::AscentSandwich: return "AscentSandwich";
  }
  return "?";
}

namespace {

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (const cplx& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

// Certified upper bound on the top singular value: the power estimate when it
// converged, otherwise min(Frobenius, sqrt(colsum * rowsum)).
double sigma_upper(const Matrix& a) {
  TopSingular t = power_top_singular(a);
  if (t.converged) return t.sigma;
  double cs = 0.0, rs = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a.at(i, j));
    cs = std::max(cs, s);
  }
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += std::abs(a.at(i, j));
    rs = std::max(rs, s);
  }
  return std::min(frobenius(a), std::sqrt(cs * rs));
}

}  // namespace

double equiv_upper_to_l2(const NormSpec& spec, int dim) {
  if (spec.is_linf()) return 1.0;
  if (spec.is_lp()) {
    const double p = spec.p();
    return p <= 2.0 ? std::pow(static_cast<double>(dim), 1.0 / p - 0.5) : 1.0;
  }
  return equiv_upper_to_l2(spec.base(), dim) * sigma_upper(spec.k());
}

double equiv_upper_from_l2(const NormSpec& spec, int dim) {
  if (spec.is_linf()) return std::sqrt(static_cast<double>(dim));
  if (spec.is_lp()) {
    const double p = spec.p();
    return p >= 2.0 ? std::pow(static_cast<double>(dim), 0.5 - 1.0 / p) : 1.0;
  }
  return sigma_upper(spec.k_inverse()) * equiv_upper_from_l2(spec.base(), dim);
}

namespace {

struct Peeled {
  Matrix inv_chain;  // maps peeled coordinates back: x = inv_chain * u
  Matrix fwd_chain;  // accumulated transform: ||x||_spec = core(fwd_chain * x)
  NormSpec core;
  bool trivial;
};

Peeled peel(const NormSpec& spec, int n) {
  Matrix inv = Matrix::identity(n);
  Matrix fwd = Matrix::identity(n);
  NormSpec cur = spec;
  bool triv = true;
  while (cur.is_transformed()) {
    inv = inv * cur.k_inverse();  // x = K_out^-1 K_in^-1 ... u
    fwd = cur.k() * fwd;          // ||x||_spec = core(K_in ... K_out x)
    cur = cur.base();
    triv = false;
  }
  return {inv, fwd, cur, triv};
}

Vector unit(int n, int j) {
  Vector v(n);
  v[j] = 1.0;
  return v;
}

// Re-evaluates the ratio at a candidate witness and returns the normalized
// witness with its achieved value, so reported lower bounds are reproducible.
struct Achieved {
  double value;
  Vector x;
};

Achieved achieved_at(const Matrix& a, const NormSpec& d, const NormSpec& c, Vector x) {
  const double s = norm_eval(d, x);
  if (!(s > 0.0)) throw DegenerateWitness("witness has zero domain norm");
  x = cplx(1.0 / s, 0) * x;
  const double dn = norm_eval(d, x);
  return {norm_eval(c, a * x) / dn, x};
}

struct AscentOut {
  double value = -1.0;
  Vector x;
};

AscentOut ascend(const Matrix& a, const NormSpec& d, const NormSpec& c, Vector x,
                 const GindOptions& opts) {
  double s = norm_eval(d, x);
  if (!(s > 0.0)) return {};
  x = cplx(1.0 / s, 0) * x;
  double fx = norm_eval(c, a * x);

  for (int iter = 0; iter < opts.ascent_iteration_cap; ++iter) {
    if (fx == 0.0) break;
    const Vector ax = a * x;
    const Vector w = dual_vector(c, ax).y0;
    const Vector g = conjugated(transpose(a) * w);
    const Vector v = dual_vector(d, x).y0;
    Vector grad = g - cplx(fx, 0) * conjugated(v);
    const double gn = norm2(grad);
    if (gn <= 1e-14 * std::max(1.0, fx)) break;
    grad = cplx(norm2(x) / gn, 0) * grad;

    bool improved = false;
    double gain = 0.0;
    double t = 1.0;
    for (int bt = 0; bt < 45; ++bt, t *= 0.5) {
      Vector xt = x + cplx(t, 0) * grad;
      const double sd = norm_eval(d, xt);
      if (sd <= 1e-300) continue;
      xt = cplx(1.0 / sd, 0) * xt;
      const double ft = norm_eval(c, a * xt);
      if (ft > fx) {
        gain = (ft - fx) / std::max(fx, 1e-300);
        x = xt;
        fx = ft;
        improved = true;
        break;
      }
    }
    if (!improved || gain < 1e-10) break;
  }
  return {fx, x};
}

GindResult generic_path(const Matrix& a, const NormSpec& d, const NormSpec& c, int n, Seed seed,
                        const GindOptions& opts, const Peeled& pd) {
  std::vector<Vector> starts;
  for (int j = 0; j < n; ++j) starts.push_back(unit(n, j));

  const TopSingular ts = power_top_singular(a);
  if (norm2(ts.right) > 0.0) starts.push_back(ts.right);

  for (int k = 0; k < opts.random_starts; ++k) {
    Rng rng(derive(seed, static_cast<std::uint64_t>(k)));
    starts.push_back(opts.real_restrict ? random_real_vector(n, rng) : random_vector(n, rng));
  }

  // linf domains have their maxima at ball vertices; seed the ascent there.
  if (pd.core.is_linf()) {
    if (opts.real_restrict && n <= 6) {
      const int count = 1 << (n - 1);
      for (int mask = 0; mask < count; ++mask) {
        Vector s(n);
        s[0] = 1.0;
        for (int i = 1; i < n; ++i) s[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
        starts.push_back(pd.trivial ? s : pd.inv_chain * s);
      }
    } else if (!opts.real_restrict && n <= 4) {
      const int kp = 16;
      int total = 1;
      for (int i = 1; i < n; ++i) total *= kp;
      for (int idx = 0; idx < total; ++idx) {
        Vector s(n);
        s[0] = 1.0;
        int rem = idx;
        for (int i = 1; i < n; ++i) {
          const int ph = rem % kp;
          rem /= kp;
          const double th = 2.0 * 3.14159265358979323846 * ph / kp;
          s[i] = cplx(std::cos(th), std::sin(th));
        }
        starts.push_back(pd.trivial ? s : pd.inv_chain * s);
      }
    }
  }

  double best = -1.0;
  Vector bestx;
  for (const Vector& s : starts) {
    if (norm2(s) == 0.0) continue;
    AscentOut out = ascend(a, d, c, s, opts);
    if (out.value > best) {
      best = out.value;
      bestx = out.x;
    }
  }
  if (best < 0.0) throw DegenerateWitness("no usable ascent start");

  double upper = equiv_upper_to_l2(c, n) * equiv_upper_from_l2(d, n) *
                 (ts.converged ? ts.sigma : sigma_upper(a));
  upper = std::max(upper, best);
  return {best, upper, bestx, Method::AscentSandwich};
}

}  // namespace

GindResult gind(const Matrix& a, const NormSpec& domain, const NormSpec& codomain, Seed seed,
                const GindOptions& opts) {
  if (a.rows() != a.cols()) throw DimensionMismatch("gind expects a square matrix");
  const int n = a.rows();
  if (n < 1) throw DimensionMismatch("gind expects n >= 1");
  if (n > 64) throw DimensionMismatch("dimensions above 64 are unsupported");
  if (auto dd = domain.dim(); dd && *dd != n) throw DimensionMismatch("domain norm dimension");
  if (auto cd = codomain.dim(); cd && *cd != n) throw DimensionMismatch("codomain norm dimension");
  if (opts.real_restrict &&
      !(is_real(a) && domain.real_data() && codomain.real_data())) {
    throw NotRealValued("real_restrict requires real matrix and transform data");
  }

  const Peeled pd = peel(domain, n);

  if (!opts.force_generic) {
    if (is_identity(a)) {
      if (auto g = spec_proportionality(codomain, domain)) {
        Achieved ach = achieved_at(a, domain, codomain, unit(n, 0));
        return {ach.value, std::max(*g, ach.value), ach.x, Method::ExactProportional};
      }
    }

    if (pd.core.is_lp() && pd.core.p() == 1.0) {
      double best = -1.0;
      Vector bestx;
      for (int j = 0; j < n; ++j) {
        Vector x = pd.trivial ? unit(n, j) : pd.inv_chain * unit(n, j);
        const double dn = norm_eval(domain, x);
        const double val = norm_eval(codomain, a * x) / dn;
        if (val > best) {
          best = val;
          bestx = x;
        }
      }
      Achieved ach = achieved_at(a, domain, codomain, bestx);
      return {ach.value, std::max(ach.value, best), ach.x, Method::ExactColumn};
    }

    if (pd.core.is_lp() && pd.core.p() == 2.0) {
      const Peeled pc = peel(codomain, n);
      if (pc.core.is_lp() && pc.core.p() == 2.0) {
        const Matrix m2 = pc.trivial ? (pd.trivial ? a : a * pd.inv_chain)
                                     : pc.fwd_chain * (pd.trivial ? a : a * pd.inv_chain);
        const TopSingular ts = power_top_singular(m2);
        if (ts.converged) {
          if (ts.sigma == 0.0) {
            Achieved ach = achieved_at(a, domain, codomain, unit(n, 0));
            return {ach.value, ach.value, ach.x, Method::ExactSpectral};
          }
          Achieved ach =
              achieved_at(a, domain, codomain, pd.trivial ? ts.right : pd.inv_chain * ts.right);
          return {ach.value, std::max(ts.sigma, ach.value), ach.x, Method::ExactSpectral};
        }
        // fall through to the generic path, which degrades to a gap
      }
    }

    if (pd.core.is_linf() && opts.real_restrict && n <= 16) {
      const long count = 1L << (n - 1);
      double best = -1.0;
      Vector bestx;
      for (long mask = 0; mask < count; ++mask) {
        Vector s(n);
        s[0] = 1.0;
        for (int i = 1; i < n; ++i) s[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
        Vector x = pd.trivial ? s : pd.inv_chain * s;
        const double val = norm_eval(codomain, a * x) / norm_eval(domain, x);
        if (val > best) {
          best = val;
          bestx = x;
        }
      }
      Achieved ach = achieved_at(a, domain, codomain, bestx);
      return {ach.value, std::max(ach.value, best), ach.x, Method::ExactSignEnum};
    }
  }

  return generic_path(a, domain, codomain, n, seed, opts, pd);
}

GindResult ratio(const NormSpec& i, const NormSpec& j, int dim, Seed seed,
                 const GindOptions& opts) {
  if (auto d = i.dim(); d && *d != dim) throw DimensionMismatch("ratio: first norm dimension");
  if (auto d = j.dim(); d && *d != dim) throw DimensionMismatch("ratio: second norm dimension");
  return gind(Matrix::identity(dim), j, i, seed, opts);
}

Matrix column_operator(const Vector& x, int j) {
  const int n = x.dim();
  if (n < 1) throw DimensionMismatch("column operator of an empty vector");
  if (j < 0 || j >= n) {
    throw IndexOutOfRange("column index " + std::to_string(j) + " outside [0, " +
                          std::to_string(n) + ")");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, j) = x[i];
  return m;
}

Matrix column_sum_operator(const Vector& x) {
  const int n = x.dim();
  if (n < 1) throw DimensionMismatch("column operator of an empty vector");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = x[i];
  return m;
}

std::pair<double, double> predicted_column_norms(const Vector& x, int j, const NormSpec& d,
                                                 const NormSpec& c) {
  const int n = x.dim();
  if (n < 1) throw DimensionMismatch("empty vector");
  if (j < 0 || j >= n) {
    throw IndexOutOfRange("column index " + std::to_string(j) + " outside [0, " +
                          std::to_string(n) + ")");
  }
  Vector ones(n);
  for (int i = 0; i < n; ++i) ones[i] = 1.0;
  const double alpha_j = dual_norm_eval(d, unit(n, j));
  const double alpha = dual_norm_eval(d, ones);
  const double nc = norm_eval(c, x);
  return {alpha_j * nc, alpha * nc};
}

ClassicalNorms classical_norms(const Matrix& a) {
  ClassicalNorms r{0, 0, 0, 0, 0};
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a.at(i, j));
    r.col_sum = std::max(r.col_sum, s);
  }
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += std::abs(a.at(i, j));
    r.row_sum = std::max(r.row_sum, s);
  }
  for (const cplx& x : a.entries()) {
    r.entry_sum += std::abs(x);
    r.entry_max = std::max(r.entry_max, std::abs(x));
  }
  r.spectral = max_singular_value(a);
  return r;
}

double matrix_norm_value(const MatrixNormId& id, const Matrix& a, Seed seed) {
  if (const auto* tag = std::get_if<ClassicalTag>(&id)) {
    switch (*tag) {
      case ClassicalTag::ColSum: return classical_norms(a).col_sum;
      case ClassicalTag::RowSum: return classical_norms(a).row_sum;
      case ClassicalTag::Spectral: return max_singular_value(a);
      case ClassicalTag::EntrySum: {
        double s = 0.0;
        for (const cplx& x : a.entries()) s += std::abs(x);
        return s;
      }
      case ClassicalTag::EntryMax: return max_abs(a);
    }
  }
  const auto& pr = std::get<std::pair<NormSpec, NormSpec>>(id);
  return gind(a, pr.first, pr.second, seed).lower;
}

double defect_ratio(const MatrixNormId& id, const Matrix& a, const Matrix& b, Seed eval_seed) {
  const double na = matrix_norm_value(id, a, eval_seed);
  const double nb = matrix_norm_value(id, b, eval_seed);
  if (na < 1e-12 || nb < 1e-12) return -1.0;
  return matrix_norm_value(id, a * b, eval_seed) / (na * nb);
}

DefectEstimate submult_defect(const MatrixNormId& id, int n, int trials, Seed seed) {
  if (n < 1) throw DimensionMismatch("submult_defect expects n >= 1");
  if (trials < 1) throw BudgetTooSmall("submult_defect expects trials >= 1");
  const Seed eval_seed = derive(seed, 7777);

  Matrix ones(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ones.at(i, j) = 1.0;
  const Matrix eye = Matrix::identity(n);

  DefectEstimate best;
  best.value = -1.0;
  auto consider = [&](const Matrix& a, const Matrix& b) {
    const double r = defect_ratio(id, a, b, eval_seed);
    if (r > best.value) {
      best.value = r;
      best.witness_a = a;
      best.witness_b = b;
    }
  };

  consider(ones, ones);
  consider(eye, eye);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive(seed, 100 + static_cast<std::uint64_t>(t)));
    switch (t % 3) {
      case 0:
        consider(random_matrix(n, n, rng), random_matrix(n, n, rng));
        break;
      case 1: {
        const Matrix a = outer_bilinear(random_vector(n, rng), random_vector(n, rng));
        const Matrix b = outer_bilinear(random_vector(n, rng), random_vector(n, rng));
        consider(a, b);
        break;
      }
      default:
        consider(random_real_matrix(n, n, rng), random_real_matrix(n, n, rng));
        break;
    }
  }

  // Local refinement around the best sampled pair.
  Rng rng(derive(seed, 31337));
  double step = 0.5 * std::max(1.0, std::max(max_abs(best.witness_a), max_abs(best.witness_b)));
  for (int k = 0; k < 80; ++k) {
    Matrix a = best.witness_a;
    Matrix b = best.witness_b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a.at(i, j) += step * rng.cgaussian();
        b.at(i, j) += step * rng.cgaussian();
      }
    const double r = defect_ratio(id, a, b, eval_seed);
    if (r > best.value) {
      best.value = r;
      best.witness_a = a;
      best.witness_b = b;
    } else {
      step *= 0.9;
    }
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

}  // namespace gind
