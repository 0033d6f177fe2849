#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thetablocks/jacobi.hpp"

namespace thetablocks {

// Published data for the eight root systems whose theta function has q-order one.
struct SystemData {
  std::string name;
  long level = 0;                      // level of L_ev
  std::string discriminant_symbol;     // genus symbol of D(L_ev)
  std::string conway_class;
  std::map<int, int> cycle_shape;      // b -> r_b in prod (X^b - 1)^{r_b}
  std::string lambda_symbol;           // genus symbol of D(Lambda_g)
  int weight = 0;
  int eta_power = 0;                   // of the catalog theta block
  std::vector<std::string> variables;  // theta block parameters in simple-root order
  std::vector<std::string> table_forms;
};

const std::vector<SystemData>& system_catalog();
const SystemData& system_data(std::string_view name);
const std::vector<std::string>& canonical_system_names();

// "a+b+2c", "a1-a3", "2a+b+d" over the given variable names.
std::vector<Rational> parse_linear_form(std::string_view text, const std::vector<std::string>& variables);

// eta^eta_power prod theta(<form, z>) for the listed forms.
ThetaBlockSpec block_from_forms(int eta_power, const std::vector<std::string>& forms,
                                const std::vector<std::string>& variables);
ThetaBlockSpec table_block(const SystemData& s);
// Table row with every variable replaced by the given integer value.
ThetaBlockSpec table_block_at(const SystemData& s, const std::vector<long>& values);

// The two pull-backs of theta_{A4} to L_4 and the matching specialization of theta_{A1+B3}.
struct DifferenceIdentityBlocks {
  ThetaBlockSpec theta1;
  ThetaBlockSpec theta2;
  ThetaBlockSpec theta_a1b3;
};
DifferenceIdentityBlocks difference_identity_blocks();

}  // namespace thetablocks
