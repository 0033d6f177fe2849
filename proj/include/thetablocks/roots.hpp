#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thetablocks/arith.hpp"

namespace thetablocks {

enum class Family { A, B, C, D, E, F, G };

struct SimpleComponent {
  Family family;
  int rank;
  auto operator<=>(const SimpleComponent&) const = default;
};

struct RootSystemSpec {
  std::vector<SimpleComponent> components;  // kept sorted
  int rank() const;
  bool operator==(const RootSystemSpec&) const = default;
};

// Accepts "A4", "A1+B3", "3A2", "2A1 + A2 + B2", "A_1+C_3"; rejects illegal ranks (B1, C2, D3, ...).
RootSystemSpec parse_root_system(std::string_view text);
std::string canonical_name(const RootSystemSpec& spec);
char family_letter(Family f);
void validate_component(const SimpleComponent& c);

// Gram matrix of the simple roots with lengths^2: A, D, E: 2; B: long 2, short 1; C: long 4, short 2;
// F4: long 2, short 1; G2: short 2, long 6. Simple roots in Bourbaki order.
RatMatrix simple_root_gram(const SimpleComponent& c);

struct RootDatum {
  RootSystemSpec spec;
  int rank = 0;
  RatMatrix simple_gram;                          // block diagonal
  std::vector<std::vector<int>> positive_roots;   // coefficients in the simple roots
  std::vector<Rational> root_norms;               // (r, r)
  std::vector<int> root_component;
  std::vector<int> component_offset;
  int num_positive() const { return static_cast<int>(positive_roots.size()); }
};

RootDatum root_datum(const RootSystemSpec& spec);
RootDatum root_datum(std::string_view name);

// h = (1/n) sum_{r in R^+} (r, r) for one irreducible component.
Rational coxeter_number(const RootDatum& datum, int component);
// q-order of eta^(n-N) prod_{r in R^+} theta: (n + 2N) / 24
Rational theta_q_order(const RootDatum& datum);
// Is r long within its component (for single-length components every root counts as long).
bool is_long_root(const RootDatum& datum, int root);

// All root systems whose root theta function has q-order exactly 1, canonical order.
std::vector<RootSystemSpec> classify_q_order_one();

// Explicit coordinates in Euclidean space for the standard families (A, B, C, D, F4, G2, E8).
struct AmbientRealization {
  RatMatrix simple_roots;               // columns
  std::vector<RatVector> positive_roots;
};
AmbientRealization standard_realization(const SimpleComponent& c);

}  // namespace thetablocks
