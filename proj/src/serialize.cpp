#include "thetablocks/serialize.hpp"

namespace thetablocks {

std::string rational_string(const Rational& r) { return to_string(r); }

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_string(x));
  return a;
}

std::vector<Rational> rationals_from(const Json& j) {
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

}  // namespace

Json series_to_json(const PuiseuxSeries& s) {
  Json j;
  j["rank"] = s.rank();
  j["q_prec"] = rational_string(s.q_prec());
  j["q_den"] = s.q_denominator();
  j["zeta_den"] = s.zeta_denominator();
  Json terms = Json::array();
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
    terms.push_back({{"n", rational_string(s.q_exponent(qn))},
                     {"l", rationals(s.zeta_exponent(key))},
                     {"c", c.get_str()}});
  });
  j["terms"] = std::move(terms);
  return j;
}

PuiseuxSeries series_from_json(const Json& j) {
  SeriesBuilder b(j.at("rank").get<int>(), parse_rational(j.at("q_prec").get<std::string>()),
                  j.at("q_den").get<std::int64_t>(), j.at("zeta_den").get<std::int64_t>());
  for (const auto& t : j.at("terms"))
    b.add(parse_rational(t.at("n").get<std::string>()), rationals_from(t.at("l")),
          parse_integer(t.at("c").get<std::string>()));
  return b.build();
}

Json triple_to_json(const TripleSeries& t) {
  Json j;
  j["rank"] = t.rank;
  j["q_max"] = t.q_max;
  j["xi_max"] = t.xi_max;
  j["denominator"] = t.denominator.get_str();
  Json layers = Json::array();
  for (const auto& [m, s] : t.layers) layers.push_back({{"m", m}, {"series", series_to_json(s)}});
  j["layers"] = std::move(layers);
  return j;
}

TripleSeries triple_from_json(const Json& j) {
  TripleSeries t;
  t.rank = j.at("rank").get<int>();
  t.q_max = j.at("q_max").get<int>();
  t.xi_max = j.at("xi_max").get<int>();
  t.denominator = parse_integer(j.at("denominator").get<std::string>());
  for (const auto& l : j.at("layers")) t.layers[l.at("m").get<int>()] = series_from_json(l.at("series"));
  return t;
}

Json gram_to_json(const RatMatrix& g) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    std::vector<Rational> row;
    for (Eigen::Index k = 0; k < g.cols(); ++k) row.push_back(g(i, k));
    rows.push_back(rationals(row));
  }
  return rows;
}

RatMatrix gram_from_json(const Json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  RatMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto row = rationals_from(j[i]);
    if (static_cast<Eigen::Index>(row.size()) != n) throw InvalidInput("Gram matrix is not square");
    for (Eigen::Index k = 0; k < n; ++k) g(i, k) = row[k];
  }
  return g;
}

Json block_to_json(const ThetaBlockSpec& s) {
  Json factors = Json::array();
  for (const auto& [form, mult] : s.factors) factors.push_back({{"form", rationals(form)}, {"multiplicity", mult}});
  return {{"eta_power", s.eta_power}, {"factors", factors}};
}

Json jacobi_to_json(const JacobiForm& f) {
  Json j;
  j["index_gram"] = gram_to_json(f.index.gram);
  j["weight"] = rational_string(f.weight);
  j["character"] = f.character;
  Json lf = Json::array();
  for (const auto& b : f.leading_factors)
    lf.push_back({{"shift", rationals(b.shift)}, {"direction", rationals(b.direction)}, {"sign", b.sign}});
  j["leading_factors"] = std::move(lf);
  j["series"] = series_to_json(f.series);
  return j;
}

JacobiForm jacobi_from_json(const Json& j) {
  JacobiForm f;
  f.index.gram = gram_from_json(j.at("index_gram"));
  f.weight = parse_rational(j.at("weight").get<std::string>());
  f.character = j.at("character").get<int>();
  for (const auto& b : j.at("leading_factors"))
    f.leading_factors.push_back({rationals_from(b.at("shift")), rationals_from(b.at("direction")), b.at("sign").get<int>()});
  f.series = series_from_json(j.at("series"));
  return f;
}

std::string canonical_dump(const Json& j, int indent) { return j.dump(indent); }

}  // namespace thetablocks
