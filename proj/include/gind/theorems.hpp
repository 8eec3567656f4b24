#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gind/gind.hpp"
#include "gind/norms.hpp"
#include "gind/numerics.hpp"

namespace gind {

struct NamedWitness {
  std::string name;
  std::variant<Vector, Matrix> value;
};

// A quantitative check: passed <=> |achieved - predicted| <= tolerance * max(|predicted|, 1).
// Existence-style probes encode their verdict as an indicator in achieved/predicted
// so the same invariant applies; raw magnitudes live in metrics.
struct WitnessReport {
  std::string theorem;  // role-named tag, e.g. "extremal-ratio"
  std::string inputs;   // human-readable parameter summary
  double predicted = 0.0;
  double achieved = 0.0;
  double tolerance = 0.0;
  Seed seed;
  bool passed = false;
  std::vector<NamedWitness> witnesses;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

bool report_consistent(const WitnessReport& r);  // re-applies the pass predicate

struct CongruenceVerdict {
  bool congruent = false;
  double gamma = 0.0;  // meaningful iff congruent
  double alpha = 0.0;
  double beta = 0.0;
  Vector separating_x;  // meaningful iff !congruent
  Vector separating_y;
  std::string separating_side;  // "domain" or "codomain"
};

using NormPair = std::pair<NormSpec, NormSpec>;

// Builds A0 = y * z0^T from the two ratio maximizers and confirms that its
// (n1 -> n2) norm attains the product of the two equivalence constants, which
// bounds ||.||_{n1,n2} / ||.||_{n3,n4} from above globally.
WitnessReport extremal_ratio_witness(const NormSpec& n1, const NormSpec& n2, const NormSpec& n3,
                                     const NormSpec& n4, int dim, Seed seed);

// Decides whether ||.||_{d,c} is an algebra norm (iff R = max ||x||_d/||x||_c <= 1)
// and, when it is not, constructs a rank-one B with ||B|| = 1 and ||B^2|| = R > 1.
WitnessReport algebra_norm_test(const NormSpec& d, const NormSpec& c, int dim, Seed seed);

// The smallest lambda making lambda*||.||_{d,c} an algebra norm.
double min_algebra_scale(const NormSpec& d, const NormSpec& c, int dim, Seed seed);

CongruenceVerdict gi_congruent(const NormPair& p1, const NormPair& p2, int dim, Seed seed);

WitnessReport unitary_invariance_probe(const NormSpec& d, const NormSpec& c, int dim, int trials,
                                       Seed seed);

WitnessReport transformed_gind_check(const Matrix& a, const Matrix& k, const Matrix& l,
                                     const NormSpec& base_d, const NormSpec& base_c, Seed seed);

using NormEvaluator = std::function<double(const Vector&)>;

struct RecoveredNorms {
  NormEvaluator nu1;
  NormEvaluator nu2;
  double lambda = 0.0;
  WitnessReport report;
};

// Reconstructs the two vector norms hidden inside an algebra norm that arises
// as a g-ind norm, by sampled maximization over the oracle's unit ball.
RecoveredNorms recover_vector_norms(int n, const MatrixNormId& oracle, int budget, Seed seed);

}  // namespace gind
