// Acceptance suite: every release-blocking behavior, one line of output per
// criterion. Usage: acceptance <path-to-cli-binary>. The CLI path is only
// needed by the last criterion; everything else links the library directly.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "gind/cli.hpp"
#include "gind/gind.hpp"
#include "gind/theorems.hpp"

using namespace gind;

namespace {

struct Criterion {
  std::string name;
  std::string description;
  double budget_seconds;
  std::function<void()> body;  // throws std::runtime_error on failure
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

std::string g_cli_path;

struct CliOut {
  int exit_code;
  std::string output;
};

CliOut run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli_path + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int rc = pclose(p);
  return {WEXITSTATUS(rc), out};
}

// ---------------------------------------------------------------------------

void criterion_exact_paths() {
  Rng rng(Seed{1001});
  for (int t = 0; t < 100; ++t) {
    const Matrix a = random_matrix(3, 3, rng);
    const ClassicalNorms cn = classical_norms(a);
    const Seed s{static_cast<std::uint64_t>(t)};
    const GindResult g1 = gind::gind(a, NormSpec::l1(), NormSpec::l1(), s);
    require(g1.method == Method::ExactColumn, "l1 path not exact");
    require(rel_err(g1.lower, cn.col_sum) <= 1e-8, "l1 norm mismatch vs column sums");
    const GindResult g2 = gind::gind(a, NormSpec::l2(), NormSpec::l2(), s);
    require(g2.method == Method::ExactSpectral, "l2 path not exact");
    require(rel_err(g2.lower, cn.spectral) <= 1e-8, "l2 norm mismatch vs singular value");
  }
  GindOptions real_opts;
  real_opts.real_restrict = true;
  for (int t = 0; t < 100; ++t) {
    const Matrix a = random_real_matrix(3, 3, rng);
    const GindResult g = gind::gind(a, NormSpec::linf(), NormSpec::linf(),
                              Seed{static_cast<std::uint64_t>(500 + t)}, real_opts);
    require(g.method == Method::ExactSignEnum, "linf path not sign enumeration");
    require(rel_err(g.lower, classical_norms(a).row_sum) <= 1e-8,
            "linf norm mismatch vs row sums");
  }
}

void criterion_entry_max_defect() {
  const Matrix j(2, 2, {1, 1, 1, 1});
  const ClassicalNorms nj = classical_norms(j);
  const ClassicalNorms nj2 = classical_norms(j * j);
  require(rel_err(nj.entry_max, 1.0) <= 1e-12, "entry max of the ones matrix");
  require(rel_err(nj2.entry_max, 2.0) <= 1e-12, "entry max of its square");

  const DefectEstimate em = submult_defect(ClassicalTag::EntryMax, 2, 200, Seed{2002});
  require(em.value >= 2.0 - 1e-9, "entry-max defect below 2");
  const double repro =
      defect_ratio(ClassicalTag::EntryMax, em.witness_a, em.witness_b, derive(Seed{2002}, 7777));
  require(std::abs(repro - em.value) <= 1e-10, "defect witnesses do not reproduce the value");

  const DefectEstimate es = submult_defect(ClassicalTag::EntrySum, 2, 1000, Seed{2003});
  require(es.value <= 1.0 + 1e-9, "entry-sum defect exceeds 1");
}

void criterion_extremal_ratio() {
  const WitnessReport rep = extremal_ratio_witness(NormSpec::linf(), NormSpec::l1(),
                                                   NormSpec::l2(), NormSpec::l2(), 2, Seed{3003});
  require(rep.passed, "extremal report failed");
  require(rel_err(rep.predicted, 2.0) <= 1e-6, "predicted ratio is not 2");
  require(rel_err(rep.achieved, 2.0) <= 1e-6, "achieved ratio is not 2");
  Rng rng(Seed{3004});
  for (int t = 0; t < 100; ++t) {
    const Matrix a = random_matrix(2, 2, rng);
    const Seed s{static_cast<std::uint64_t>(t)};
    const double num = gind::gind(a, NormSpec::linf(), NormSpec::l1(), s).lower;
    const double den = gind::gind(a, NormSpec::l2(), NormSpec::l2(), s).upper;
    require(num <= rep.predicted * den * (1 + 1e-8), "ratio bound violated on a sample");
  }
}

void criterion_algebra_criterion() {
  const WitnessReport yes = algebra_norm_test(NormSpec::linf(), NormSpec::l1(), 2, Seed{4004});
  require(yes.passed && yes.metrics.at("is_algebra") == 1.0, "linf->l1 not accepted");

  const WitnessReport no = algebra_norm_test(NormSpec::l1(), NormSpec::linf(), 2, Seed{4005});
  require(no.passed && no.metrics.at("is_algebra") == 0.0, "l1->linf not rejected");
  const Matrix* b = nullptr;
  for (const NamedWitness& w : no.witnesses)
    if (w.name == "B") b = &std::get<Matrix>(w.value);
  require(b != nullptr, "counterexample matrix missing");
  const double nb = gind::gind(*b, NormSpec::l1(), NormSpec::linf(), Seed{4006}).lower;
  const double nb2 = gind::gind(*b * *b, NormSpec::l1(), NormSpec::linf(), Seed{4007}).lower;
  require(rel_err(nb, 1.0) <= 1e-9, "counterexample norm is not 1");
  require(rel_err(nb2, 2.0) <= 1e-9, "squared counterexample norm is not 2");
}

void criterion_minimal_scale() {
  for (int n = 2; n <= 3; ++n) {
    const double lam = min_algebra_scale(NormSpec::l1(), NormSpec::linf(), n,
                                         Seed{static_cast<std::uint64_t>(5000 + n)});
    require(rel_err(lam, static_cast<double>(n)) <= 1e-8, "minimal scale is not n");

    // just below the minimal scale, the rank-one witness violates
    const WitnessReport rep =
        algebra_norm_test(NormSpec::l1(), NormSpec::linf(), n, Seed{static_cast<std::uint64_t>(5100 + n)});
    const Matrix* b = nullptr;
    for (const NamedWitness& w : rep.witnesses)
      if (w.name == "B") b = &std::get<Matrix>(w.value);
    require(b != nullptr, "witness matrix missing");
    const double scale = 0.99 * lam;
    const double nb = gind::gind(*b, NormSpec::l1(), NormSpec::linf(), Seed{5200}).upper;
    const double nb2 = gind::gind(*b * *b, NormSpec::l1(), NormSpec::linf(), Seed{5201}).lower;
    require(scale * nb2 > (scale * nb) * (scale * nb) * (1 + 1e-9),
            "sub-minimal scale fails to violate submultiplicativity");
  }
}

void criterion_congruence() {
  const NormPair p1{NormSpec::l2(), NormSpec::l2()};
  const NormPair p2{NormSpec::scaled(3.0, NormSpec::l2(), 2),
                    NormSpec::scaled(5.0, NormSpec::l2(), 2)};
  const CongruenceVerdict v = gi_congruent(p1, p2, 2, Seed{6006});
  require(v.congruent, "scaled l2 pairs not congruent");
  require(std::abs(v.gamma - 0.6) <= 1e-9, "gamma is not 3/5");
  Rng rng(Seed{6007});
  for (int t = 0; t < 200; ++t) {
    const Matrix a = random_matrix(2, 2, rng);
    const Seed s{static_cast<std::uint64_t>(t)};
    const double v1 = gind::gind(a, p1.first, p1.second, s).lower;
    const double v2 = gind::gind(a, p2.first, p2.second, s).lower;
    require(std::abs(v1 - v.gamma * v2) <= 1e-6 * std::max(v1, 1.0),
            "congruence scaling off on a sample");
  }

  const CongruenceVerdict w = gi_congruent({NormSpec::l1(), NormSpec::l2()},
                                           {NormSpec::l2(), NormSpec::l2()}, 2, Seed{6008});
  require(!w.congruent, "l1/l2 domains reported congruent");
  require(w.separating_side == "domain", "wrong separating side");
  const double qx = norm_eval(NormSpec::l1(), w.separating_x) / norm_eval(NormSpec::l2(), w.separating_x);
  const double qy = norm_eval(NormSpec::l1(), w.separating_y) / norm_eval(NormSpec::l2(), w.separating_y);
  require(qy > qx * (1 + 1e-6), "separating vectors do not separate");
}

void criterion_unitary_probes() {
  const WitnessReport inv = unitary_invariance_probe(NormSpec::l2(), NormSpec::l2(), 3, 100,
                                                     Seed{7007});
  require(inv.passed, "l2 invariance probe failed");
  require(inv.metrics.at("deviation") <= 1e-8, "l2 deviation above 1e-8");

  const WitnessReport brk = unitary_invariance_probe(NormSpec::l1(), NormSpec::l1(), 2, 200,
                                                     Seed{7008});
  require(brk.passed, "l1 break probe failed");
  require(brk.metrics.at("deviation") >= 0.4, "l1 break too small");
}

void criterion_transformed_identity() {
  Rng rng(Seed{8008});
  int done = 0;
  for (int t = 0; done < 50 && t < 500; ++t) {
    const int n = (t % 2 == 0) ? 2 : 3;
    const Matrix a = random_matrix(n, n, rng);
    const Matrix k = Matrix::identity(n) + cplx(0.25) * random_matrix(n, n, rng);
    const Matrix l = Matrix::identity(n) + cplx(0.25) * random_matrix(n, n, rng);
    if (condition_estimate(k) > 50.0 || condition_estimate(l) > 50.0) continue;
    const NormSpec bd = (t % 3 == 0) ? NormSpec::l2() : NormSpec::l1();
    const NormSpec bc = (t % 3 == 1) ? NormSpec::l2() : NormSpec::l1();
    const WitnessReport rep = transformed_gind_check(a, k, l, bd, bc,
                                                     Seed{static_cast<std::uint64_t>(t)});
    require(rep.passed, "transformed identity failed on a sample");
    require(rep.achieved <= 1e-8, "transformed identity gap above 1e-8");
    ++done;
  }
  require(done == 50, "not enough well-conditioned transforms sampled");
}

void criterion_identity_norms() {
  const NormSpec beta = NormSpec::scaled(2.0, NormSpec::l2(), 2);
  const GindResult r1 = gind::gind(Matrix::identity(2), NormSpec::l2(), beta, Seed{9009});
  require(rel_err(r1.lower, 2.0) <= 1e-8 && rel_err(r1.upper, 2.0) <= 1e-8,
          "identity norm from l2 is not 2");
  const GindResult r2 = gind::gind(Matrix::identity(2), NormSpec::linf(), beta, Seed{9010});
  const double want = 2.0 * std::sqrt(2.0);
  require(rel_err(r2.lower, want) <= 1e-8 && rel_err(r2.upper, want) <= 1e-8,
          "identity norm from linf is not 2*sqrt(2)");
  Rng rng(Seed{9011});
  for (int t = 0; t < 100; ++t) {
    const Matrix a = random_matrix(2, 2, rng);
    const Seed s{static_cast<std::uint64_t>(t)};
    require(gind::gind(a, NormSpec::l2(), beta, s).lower <=
                gind::gind(a, NormSpec::linf(), beta, s).upper * (1 + 1e-8),
            "linf-domain norm fails to dominate");
  }
}

void criterion_norm_recovery() {
  const RecoveredNorms rec = recover_vector_norms(2, ClassicalTag::Spectral, 10000, Seed{10010});
  require(rec.report.passed, "recovery report failed");
  require(rec.report.metrics.at("qualifying_count") == 20.0, "fewer than 20 test matrices");
  require(std::abs(rec.report.achieved - 1.0) <= 0.05, "reconstruction off by more than 5%");
  require(std::abs(rec.lambda - 1.0) <= 0.02, "lambda is not 1 for the spectral oracle");
  Rng rng(Seed{10011});
  double lo = 1e300, hi = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Vector x = random_vector(2, rng);
    const double q = rec.nu1(x) / norm2(x);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  require(hi / lo <= 1.02, "nu1 / l2 varies by more than 2%");
}

void criterion_grid_oracle() {
  const std::vector<NormSpec> specs = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(),
                                       NormSpec::lp(3.0)};
  Rng rng(Seed{11011});
  GindOptions real_opts;
  real_opts.real_restrict = true;
  const int steps = 10000;
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_real_matrix(2, 2, rng);
    for (const NormSpec& d : specs)
      for (const NormSpec& c : specs) {
        const GindResult r = gind::gind(a, d, c, Seed{static_cast<std::uint64_t>(t)}, real_opts);
        double ref = 0.0;
        for (int k = 0; k < steps; ++k) {
          const double th = 2.0 * 3.14159265358979323846 * k / steps;
          const Vector x{std::cos(th), std::sin(th)};
          ref = std::max(ref, norm_eval(c, a * x) / norm_eval(d, x));
        }
        require(std::abs(r.lower - ref) <= 1e-3 * std::max(ref, 1.0),
                "solver disagrees with the grid sweep");
        require(ref <= r.upper * (1 + 1e-3), "upper bound below the grid sweep");
      }
  }
}

void criterion_cli_verify_all() {
  require(!g_cli_path.empty(), "no CLI binary path supplied");
  const CliOut first = run_cli("verify-all --n 2 --seed 0 --format json");
  require(first.exit_code == 0, "verify-all exited nonzero");
  int pass_count = 0;
  {
    std::size_t pos = 0;
    while ((pos = first.output.find("\"passed\": true", pos)) != std::string::npos) {
      ++pass_count;
      ++pos;
    }
  }
  require(pass_count >= 10, "fewer than 10 passing checks in verify-all");
  require(first.output.find("\"passed\": false") == std::string::npos,
          "a verify-all check failed");
  require(first.output.find("\"all_passed\": true") != std::string::npos,
          "all_passed flag missing");

  const CliOut second = run_cli("verify-all --n 2 --seed 0 --format json");
  require(second.exit_code == 0, "second verify-all exited nonzero");
  const std::regex rt("\"runtime_ms\": [0-9]+");
  const std::string a = std::regex_replace(first.output, rt, "\"runtime_ms\": X");
  const std::string b = std::regex_replace(second.output, rt, "\"runtime_ms\": X");
  require(a == b, "verify-all output is not reproducible");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria = {
      {"criterion-01", "exact paths match the classical matrix norms", 10.0, criterion_exact_paths},
      {"criterion-02", "entry-max norm is not an algebra norm, entry-sum is", 5.0,
       criterion_entry_max_defect},
      {"criterion-03", "extremal norm-ratio witness attains its bound", 5.0,
       criterion_extremal_ratio},
      {"criterion-04", "algebra-norm criterion accepts and rejects with witnesses", 10.0,
       criterion_algebra_criterion},
      {"criterion-05", "minimal algebra scale equals the equivalence constant", 5.0,
       criterion_minimal_scale},
      {"criterion-06", "congruence detection with scaling constants and separation", 10.0,
       criterion_congruence},
      {"criterion-07", "unitary invariance held and broken as classified", 10.0,
       criterion_unitary_probes},
      {"criterion-08", "transformed norms reduce to conjugated plain norms", 10.0,
       criterion_transformed_identity},
      {"criterion-09", "identity norms expose non-minimal domain domination", 5.0,
       criterion_identity_norms},
      {"criterion-10", "vector norms recovered from the spectral oracle", 60.0,
       criterion_norm_recovery},
      {"criterion-11", "solver values agree with a dense grid sweep", 30.0, criterion_grid_oracle},
      {"criterion-12", "CLI verify-all passes and reproduces bit for bit", 120.0,
       criterion_cli_verify_all},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > c.budget_seconds) {
      std::ostringstream os;
      os << "time budget exceeded (" << secs << "s > " << c.budget_seconds << "s)";
      error = os.str();
    }
    const bool ok = error.empty();
    if (!ok) ++failures;
    std::printf("%s  %s  %s  (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                c.description.c_str(), secs, ok ? "" : " -- ", error.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
