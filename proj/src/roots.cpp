#include "thetablocks/roots.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <Eigen/LU>

namespace thetablocks {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

void validate_component(const SimpleComponent& c) {
  bool ok = false;
  switch (c.family) {
    case Family::A: ok = c.rank >= 1; break;
    case Family::B: ok = c.rank >= 2; break;
    case Family::C: ok = c.rank >= 3; break;
    case Family::D: ok = c.rank >= 4; break;
    case Family::E: ok = c.rank >= 6 && c.rank <= 8; break;
    case Family::F: ok = c.rank == 4; break;
    case Family::G: ok = c.rank == 2; break;
  }
  if (!ok)
    throw InvalidInput(std::string("illegal root system component ") + family_letter(c.family) +
                       std::to_string(c.rank));
}

int RootSystemSpec::rank() const {
  int n = 0;
  for (const auto& c : components) n += c.rank;
  return n;
}

RootSystemSpec parse_root_system(std::string_view text) {
  RootSystemSpec spec;
  std::string cleaned;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_') cleaned += ch;
  if (cleaned.empty()) throw InvalidInput("empty root system name");
  if (cleaned.front() == '+' || cleaned.back() == '+' || cleaned.find("++") != std::string::npos)
    throw InvalidInput("malformed root system name: " + std::string(text));
  std::stringstream ss(cleaned);
  std::string token;
  while (std::getline(ss, token, '+')) {
    if (token.empty()) throw InvalidInput("malformed root system name: " + std::string(text));
    std::size_t pos = 0;
    int mult = 1;
    if (std::isdigit(static_cast<unsigned char>(token[0]))) {
      mult = 0;
      while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos])))
        mult = mult * 10 + (token[pos++] - '0');
    }
    if (pos >= token.size()) throw InvalidInput("malformed root system name: " + std::string(text));
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[pos++])));
    if (letter < 'A' || letter > 'G') throw InvalidInput("unknown root system family in " + std::string(text));
    if (pos >= token.size()) throw InvalidInput("missing rank in " + std::string(text));
    int rank = 0;
    for (; pos < token.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(token[pos])))
        throw InvalidInput("malformed root system name: " + std::string(text));
      rank = rank * 10 + (token[pos] - '0');
    }
    SimpleComponent c{static_cast<Family>(letter - 'A'), rank};
    validate_component(c);
    if (mult <= 0) throw InvalidInput("multiplicity must be positive in " + std::string(text));
    for (int i = 0; i < mult; ++i) spec.components.push_back(c);
  }
  std::sort(spec.components.begin(), spec.components.end());
  return spec;
}

std::string canonical_name(const RootSystemSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.components.size();) {
    std::size_t j = i;
    while (j < spec.components.size() && spec.components[j] == spec.components[i]) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i);
    out += family_letter(spec.components[i].family);
    out += std::to_string(spec.components[i].rank);
    i = j;
  }
  return out;
}

RatMatrix simple_root_gram(const SimpleComponent& c) {
  validate_component(c);
  const int n = c.rank;
  RatMatrix g = RatMatrix::Zero(n, n);
  auto link = [&](int i, int j, Rational v) {
    g(i, j) = v;
    g(j, i) = v;
  };
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  switch (c.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      g(n - 1, n - 1) = 1;
      break;
    case Family::C:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n - 1, -2);
      g(n - 1, n - 1) = 4;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case Family::E:
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::F:
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, ratio(-1, 2));
      g(2, 2) = 1;
      g(3, 3) = 1;
      break;
    case Family::G:
      link(0, 1, -3);
      g(1, 1) = 6;
      break;
  }
  return g;
}

namespace {

std::vector<std::vector<int>> positive_roots_of(const RatMatrix& g) {
  const int n = static_cast<int>(g.rows());
  std::vector<std::vector<int>> roots;
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(n, 0);
    v[i] = 1;
    index[v] = static_cast<int>(roots.size());
    roots.push_back(v);
  }
  // pairing <beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i)
  auto cartan = [&](const std::vector<int>& beta, int i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += beta[j] * g(j, i);
    Rational c = 2 * s / g(i, i);
    return to_int64(c);
  };
  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> beta = roots[idx];
      int p = 0;
      for (std::vector<int> down = beta;;) {
        down[i] -= 1;
        if (!index.count(down)) break;
        ++p;
      }
      long q = p - cartan(beta, i);
      if (q <= 0) continue;
      beta[i] += 1;
      if (!index.count(beta)) {
        index[beta] = static_cast<int>(roots.size());
        roots.push_back(beta);
      }
    }
  }
  return roots;
}

}  // namespace

RootDatum root_datum(const RootSystemSpec& spec) {
  if (spec.components.empty()) throw InvalidInput("empty root system");
  RootDatum d;
  d.spec = spec;
  d.rank = spec.rank();
  d.simple_gram = RatMatrix::Zero(d.rank, d.rank);
  int offset = 0;
  for (std::size_t ci = 0; ci < spec.components.size(); ++ci) {
    const auto& c = spec.components[ci];
    RatMatrix g = simple_root_gram(c);
    d.simple_gram.block(offset, offset, c.rank, c.rank) = g;
    d.component_offset.push_back(offset);
    for (const auto& local : positive_roots_of(g)) {
      std::vector<int> full(d.rank, 0);
      for (int i = 0; i < c.rank; ++i) full[offset + i] = local[i];
      Rational norm = 0;
      for (int i = 0; i < c.rank; ++i)
        for (int j = 0; j < c.rank; ++j) norm += local[i] * local[j] * g(i, j);
      d.positive_roots.push_back(full);
      d.root_norms.push_back(norm);
      d.root_component.push_back(static_cast<int>(ci));
    }
    offset += c.rank;
  }
  return d;
}

RootDatum root_datum(std::string_view name) { return root_datum(parse_root_system(name)); }

Rational coxeter_number(const RootDatum& datum, int component) {
  Rational s = 0;
  for (int r = 0; r < datum.num_positive(); ++r)
    if (datum.root_component[r] == component) s += datum.root_norms[r];
  return s / datum.spec.components.at(component).rank;
}

Rational theta_q_order(const RootDatum& datum) { return ratio(datum.rank + 2 * datum.num_positive(), 24); }

bool is_long_root(const RootDatum& datum, int root) {
  Rational longest = 0;
  for (int r = 0; r < datum.num_positive(); ++r)
    if (datum.root_component[r] == datum.root_component[root]) longest = std::max(longest, datum.root_norms[r]);
  return datum.root_norms[root] == longest;
}

std::vector<RootSystemSpec> classify_q_order_one() {
  const int target = 24;
  // irreducible candidates with n + 2N <= 24
  std::vector<std::pair<SimpleComponent, int>> candidates;
  auto consider = [&](Family f, int lo, int hi) {
    for (int n = lo; n <= hi; ++n) {
      SimpleComponent c{f, n};
      auto d = root_datum(RootSystemSpec{{c}});
      int cost = d.rank + 2 * d.num_positive();
      if (cost > target) break;
      candidates.emplace_back(c, cost);
    }
  };
  consider(Family::A, 1, target);
  consider(Family::B, 2, target);
  consider(Family::C, 3, target);
  consider(Family::D, 4, target);
  consider(Family::E, 6, 8);
  consider(Family::F, 4, 4);
  consider(Family::G, 2, 2);
  std::sort(candidates.begin(), candidates.end());

  std::vector<RootSystemSpec> out;
  std::vector<SimpleComponent> current;
  auto search = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(RootSystemSpec{current});
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (candidates[i].second > remaining) continue;
      current.push_back(candidates[i].first);
      self(self, i, remaining - candidates[i].second);
      current.pop_back();
    }
  };
  search(search, 0, target);
  std::sort(out.begin(), out.end(), [](const RootSystemSpec& a, const RootSystemSpec& b) {
    int wa = a.rank(), wb = b.rank();
    if (wa != wb) return wa < wb;
    return a.components.size() < b.components.size() ||
           (a.components.size() == b.components.size() && a.components < b.components);
  });
  return out;
}

namespace {

RatVector unit(int dim, int i, Rational s = 1) {
  RatVector v = RatVector::Zero(dim);
  v(i) = s;
  return v;
}

void add_pm_pairs(std::vector<RatVector>& roots, int dim, bool plus_too) {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          if (!plus_too && si == sj) continue;
          roots.push_back(unit(dim, i, si) + unit(dim, j, sj));
        }
}

}  // namespace

AmbientRealization standard_realization(const SimpleComponent& c) {
  validate_component(c);
  const int n = c.rank;
  AmbientRealization a;
  auto set_simple = [&](const std::vector<RatVector>& cols) {
    a.simple_roots = RatMatrix(cols[0].size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) a.simple_roots.col(static_cast<Eigen::Index>(i)) = cols[i];
  };
  std::vector<RatVector> simple;
  switch (c.family) {
    case Family::A: {
      int dim = n + 1;
      for (int i = 0; i < n; ++i) simple.push_back(unit(dim, i) - unit(dim, i + 1));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (i != j) a.positive_roots.push_back(unit(dim, i) - unit(dim, j));
      break;
    }
    case Family::B:
    case Family::C:
    case Family::D: {
      for (int i = 0; i + 1 < n; ++i) simple.push_back(unit(n, i) - unit(n, i + 1));
      if (c.family == Family::B) simple.push_back(unit(n, n - 1));
      if (c.family == Family::C) simple.push_back(unit(n, n - 1, 2));
      if (c.family == Family::D) simple.push_back(unit(n, n - 2) + unit(n, n - 1));
      add_pm_pairs(a.positive_roots, n, true);
      for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) {
          if (c.family == Family::B) a.positive_roots.push_back(unit(n, i, s));
          if (c.family == Family::C) a.positive_roots.push_back(unit(n, i, 2 * s));
        }
      break;
    }
    case Family::F: {
      simple = {unit(4, 1) - unit(4, 2), unit(4, 2) - unit(4, 3), unit(4, 3),
                (unit(4, 0) - unit(4, 1) - unit(4, 2) - unit(4, 3)) * ratio(1, 2)};
      add_pm_pairs(a.positive_roots, 4, true);
      for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) a.positive_roots.push_back(unit(4, i, s));
      for (int mask = 0; mask < 16; ++mask) {
        RatVector v(4);
        for (int i = 0; i < 4; ++i) v(i) = (mask >> i & 1) ? ratio(-1, 2) : ratio(1, 2);
        a.positive_roots.push_back(v);
      }
      break;
    }
    case Family::G: {
      simple = {unit(3, 0) - unit(3, 1), unit(3, 1) + unit(3, 2) - unit(3, 0, 2)};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          a.positive_roots.push_back(unit(3, i) - unit(3, j));
          int k = 3 - i - j;
          RatVector l = unit(3, i, 2) - unit(3, j) - unit(3, k);
          a.positive_roots.push_back(l);
          a.positive_roots.push_back(-l);
        }
      // each long root appears once per ordering of the other two indices
      std::sort(a.positive_roots.begin(), a.positive_roots.end(), [](const RatVector& x, const RatVector& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
      });
      a.positive_roots.erase(std::unique(a.positive_roots.begin(), a.positive_roots.end()), a.positive_roots.end());
      break;
    }
    case Family::E: {
      if (n != 8) throw InvalidInput("no standard realization for E6, E7");
      RatVector a1 = RatVector::Constant(8, ratio(-1, 2));
      a1(0) = ratio(1, 2);
      a1(7) = ratio(1, 2);
      simple = {a1, unit(8, 0) + unit(8, 1)};
      for (int i = 0; i + 1 < 7; ++i) simple.push_back(unit(8, i + 1) - unit(8, i));
      add_pm_pairs(a.positive_roots, 8, true);
      for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        RatVector v(8);
        for (int i = 0; i < 8; ++i) v(i) = (mask >> i & 1) ? ratio(-1, 2) : ratio(1, 2);
        a.positive_roots.push_back(v);
      }
      break;
    }
  }
  set_simple(simple);
  // keep the roots that are nonnegative combinations of the simple roots
  RatMatrix s = a.simple_roots;
  RatMatrix gram = s.transpose() * s;
  Eigen::FullPivLU<RatMatrix> lu(gram);
  std::vector<RatVector> positive;
  for (const auto& r : a.positive_roots) {
    RatVector coeffs = lu.solve(RatVector(s.transpose() * r));
    bool nonneg = true;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) nonneg = nonneg && coeffs(i) >= 0;
    if (nonneg) positive.push_back(r);
  }
  a.positive_roots = positive;
  return a;
}

}  // namespace thetablocks
