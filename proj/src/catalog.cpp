#include "thetablocks/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace thetablocks {

namespace {

std::vector<std::string> indexed(char letter, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(std::string(1, letter) + std::to_string(i));
  return v;
}

std::vector<SystemData> build_catalog() {
  const std::vector<std::string> abcd{"a", "b", "c", "d"};
  std::vector<SystemData> c;
  c.push_back({"A4", 5, "5^{+3}", "5C", {{1, -1}, {5, 5}}, "5^{+3}", 2, -6, abcd,
               {"a", "b", "c", "d", "a+b", "b+c", "c+d", "a+b+c", "b+c+d", "a+b+c+d"}});
  c.push_back({"A1+B3", 10, "2_II^{+2}5^{+3}", "-10D", {{1, -2}, {2, 3}, {5, 2}, {10, 1}}, "2_II^{-4}5^{-3}", 2, -6,
               abcd, {"a", "b", "b+c", "b+2c+2d", "b+c+d", "b+c+2d", "c", "c+d", "c+2d", "d"}});
  c.push_back({"A1+C3", 8, "2_3^{-1}4_1^{+1}8_II^{-2}", "-8E", {{1, -2}, {2, 3}, {4, 1}, {8, 2}},
               "2_3^{-1}4_1^{+1}8_II^{-2}", 2, -6, abcd,
               {"a", "b", "2b+2c+d", "b+c", "b+2c+d", "b+c+d", "c", "2c+d", "c+d", "d"}});
  c.push_back({"B2+G2", 12, "2_6^{+2}4_II^{-2}3^{-3}", "-12I", {{1, -2}, {2, 2}, {3, 2}, {4, 1}, {12, 1}},
               "2_2^{+2}4_II^{-2}3^{+3}", 2, -6, abcd,
               {"a", "a+b", "a+2b", "b", "c", "3c+d", "3c+2d", "2c+d", "c+d", "d"}});
  c.push_back({"3A2", 3, "3^{-3}", "3C", {{1, -3}, {3, 9}}, "3^{+5}", 3, -3, {"a1", "b1", "a2", "b2", "a3", "b3"},
               {"a1", "a1+b1", "b1", "a2", "a2+b2", "b2", "a3", "a3+b3", "b3"}});
  c.push_back({"3A1+A3", 4, "2_6^{+2}4_II^{-2}", "-4C", {{1, -4}, {2, 6}, {4, 4}}, "2_6^{+2}4_II^{+4}", 3, -3,
               indexed('a', 6), {"a1", "a2", "a3", "a4", "a5", "a6", "a4+a5", "a5+a6", "a4+a5+a6"}});
  c.push_back({"2A1+A2+B2", 6, "2_II^{+2}3^{-3}", "-6C", {{1, -4}, {2, 5}, {3, 4}, {6, 1}}, "2_II^{-6}3^{-5}", 3, -3,
               indexed('a', 6), {"a1", "a2", "a3", "a3+a4", "a4", "a5", "a5+a6", "a5+2a6", "a6"}});
  c.push_back({"8A1", 2, "2_II^{+2}", "-2A", {{1, -8}, {2, 16}}, "2_II^{+8}", 4, 0, indexed('a', 8),
               {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"}});
  return c;
}

}  // namespace

const std::vector<SystemData>& system_catalog() {
  static const std::vector<SystemData> c = build_catalog();
  return c;
}

const SystemData& system_data(std::string_view name) {
  std::string canon = canonical_name(parse_root_system(name));
  for (const auto& s : system_catalog())
    if (s.name == canon) return s;
  throw InvalidInput("root system " + canon + " does not have q-order one");
}

const std::vector<std::string>& canonical_system_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : system_catalog()) v.push_back(s.name);
    return v;
  }();
  return names;
}

std::vector<Rational> parse_linear_form(std::string_view text, const std::vector<std::string>& variables) {
  std::vector<Rational> out(variables.size(), Rational(0));
  std::size_t i = 0;
  auto fail = [&]() { throw InvalidInput("cannot parse linear form '" + std::string(text) + "'"); };
  bool first = true;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail();
    }
    while (i < text.size() && text[i] == ' ') ++i;
    long coef = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) coef = coef * 10 + (text[i++] - '0');
      if (i < text.size() && text[i] == '*') ++i;
    }
    std::size_t start = i;
    if (i == text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) fail();
    ++i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    std::string name(text.substr(start, i - start));
    std::erase(name, '_');
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) fail();
    out[it - variables.begin()] += sign * coef;
    first = false;
  }
  if (first) fail();
  return out;
}

ThetaBlockSpec block_from_forms(int eta_power, const std::vector<std::string>& forms,
                                const std::vector<std::string>& variables) {
  ThetaBlockSpec s;
  s.eta_power = eta_power;
  for (const auto& f : forms) s.factors.emplace_back(parse_linear_form(f, variables), 1);
  return s;
}

ThetaBlockSpec table_block(const SystemData& s) { return block_from_forms(s.eta_power, s.table_forms, s.variables); }

ThetaBlockSpec table_block_at(const SystemData& s, const std::vector<long>& values) {
  if (values.size() != s.variables.size()) throw InvalidInput("wrong number of parameter values");
  ThetaBlockSpec out;
  out.eta_power = s.eta_power;
  for (const auto& f : s.table_forms) {
    auto form = parse_linear_form(f, s.variables);
    Rational v = 0;
    for (std::size_t i = 0; i < values.size(); ++i) v += form[i] * values[i];
    out.factors.push_back({{v}, 1});
  }
  return out;
}

DifferenceIdentityBlocks difference_identity_blocks() {
  const std::vector<std::string> abcd{"a", "b", "c", "d"};
  DifferenceIdentityBlocks f;
  f.theta1 = block_from_forms(
      -6, {"a", "b", "b+c", "b+2c+2d", "a+b", "b+c+2d", "c", "a-c", "c+2d", "a+b+c+2d"}, abcd);
  f.theta2 = block_from_forms(
      -6, {"a-c-d", "b", "b+c", "b+2c+2d", "a+b+c+d", "b+c+2d", "c", "a+d", "c+2d", "a+b+d"}, abcd);
  f.theta_a1b3 = block_from_forms(
      -6, {"2a+b+d", "b", "b+c", "b+2c+2d", "b+c+d", "b+c+2d", "c", "c+d", "c+2d", "d"}, abcd);
  return f;
}

}  // namespace thetablocks
