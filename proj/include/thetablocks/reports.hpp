#pragma once

#include <string>
#include <vector>

#include "thetablocks/cache.hpp"
#include "thetablocks/catalog.hpp"
#include "thetablocks/lifts.hpp"
#include "thetablocks/serialize.hpp"
#include "thetablocks/weilrep.hpp"

namespace thetablocks {

struct CheckOutcome {
  std::string check;
  std::string root_system;  // empty for checks not tied to one system
  bool pass = false;
  std::string summary;
  Json data;
  double seconds = 0;
};

Json outcome_json(const CheckOutcome& c, bool with_timing = false);

// Theta precision used for psi when only its decomposition is needed.
inline constexpr int kDecompositionThetaPrecision = 8;

CheckOutcome classification_check();
CheckOutcome holomorphy_check(const std::string& system, int q_prec = 6);
CheckOutcome main_identity_check(ExpansionCache& cache, const std::string& system, int q_max, int xi_max);
CheckOutcome principal_parts_check(ExpansionCache& cache, const std::string& system, int theta_prec);
CheckOutcome reflectivity_check(ExpansionCache& cache, const std::string& system, int theta_prec,
                                const Rational& norm_bound = Rational(2));
CheckOutcome invariant_dimension_check(const std::string& system);
CheckOutcome milgram_check(const std::string& system);
CheckOutcome genus_check(const std::string& system);
CheckOutcome conway_check(const std::string& system);
CheckOutcome invariant_structure_check(const std::string& system);
CheckOutcome support_condition_check(const std::string& system);
CheckOutcome table_specialization_check(const std::string& system);
CheckOutcome difference_identity_check(int q_prec = 4);

Json main_identity_json(const MainIdentityReport& r);
Json reflectivity_json(const ReflectivityReport& r);
Json principal_parts_json(const PrincipalPartReport& r);
Json invariants_json(const DiscriminantForm& d, const InvariantSpace& s);

// theta_R's weight 0 vector-valued form on D(L_ev), read from the constant components.
struct ThetaVector {
  DiscriminantForm form;
  std::vector<Rational> value;
};
ThetaVector theta_vector(const std::string& system);

struct SuiteConfig {
  std::vector<std::string> systems;
  int q_max = 3;
  int xi_max = 3;
  bool main_identity = true;
  unsigned jobs = 1;
};

// Runs every check for every selected system plus the global ones; results in a fixed order.
std::vector<CheckOutcome> run_suite(ExpansionCache& cache, const SuiteConfig& config);

// Theta precision shared by principal parts and reflectivity in a suite run.
int suite_theta_precision(const SuiteConfig& config);

Json suite_json(const std::vector<CheckOutcome>& results, const SuiteConfig& config, bool with_timing = false);
bool all_pass(const std::vector<CheckOutcome>& results);

}  // namespace thetablocks
