#include <CLI11.hpp>

#include <chrono>
#include <future>
#include <iostream>
#include <thread>

#include "thetablocks/reports.hpp"

using namespace thetablocks;

namespace {

struct Options {
  std::string format = "text";
  bool json = false;
  std::string cache_dir;
  bool no_cache = false;
  unsigned jobs = 0;
  bool timings = false;
  std::size_t limit = 40;
};

bool as_json(const Options& o) { return o.json || o.format == "json"; }

unsigned job_count(const Options& o) {
  if (o.jobs) return o.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

ExpansionCache make_cache(const Options& o) {
  if (o.no_cache) return ExpansionCache(std::nullopt);
  if (!o.cache_dir.empty()) return ExpansionCache(std::filesystem::path(o.cache_dir));
  return ExpansionCache(ExpansionCache::default_directory());
}

std::vector<std::string> select_systems(const std::string& sel) {
  if (sel == "all") return canonical_system_names();
  return {system_data(sel).name};
}

Json cache_json(const CacheStats& s) {
  return {{"directory", s.directory}, {"memory_hits", s.memory_hits}, {"disk_hits", s.disk_hits},
          {"misses", s.misses},       {"writes", s.writes},           {"write_failures", s.write_failures},
          {"degraded", s.degraded}};
}

void print_series_text(const PuiseuxSeries& s, std::size_t limit) {
  std::cout << "rank " << s.rank() << ", known below q^" << to_string(s.q_prec()) << ", " << s.num_terms()
            << " terms\n";
  std::size_t shown = 0;
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
    if (shown++ >= limit) return;
    std::cout << "  q^" << to_string(s.q_exponent(qn)) << " zeta^(";
    auto l = s.zeta_exponent(key);
    for (std::size_t i = 0; i < l.size(); ++i) std::cout << (i ? "," : "") << to_string(l[i]);
    std::cout << ")  " << c << "\n";
  });
  if (s.num_terms() > limit) std::cout << "  ... " << s.num_terms() - limit << " more\n";
}

Json form_json(const JacobiForm& f) {
  Json j = jacobi_to_json(f);
  j["verdict"] = "pass";
  return j;
}

void print_form_text(const std::string& title, const JacobiForm& f, std::size_t limit) {
  std::cout << title << ": weight " << to_string(f.weight) << ", character exponent " << f.character << "\n";
  print_series_text(f.series, limit);
}

int emit_outcomes(const std::vector<CheckOutcome>& results, const Options& o, const Json& extra = Json::object()) {
  bool ok = all_pass(results);
  if (as_json(o)) {
    Json checks = Json::array();
    for (const auto& c : results) checks.push_back(outcome_json(c, o.timings));
    Json j{{"verdict", ok ? "pass" : "fail"}, {"checks", checks}};
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::cout << canonical_dump(j) << "\n";
  } else {
    for (const auto& c : results) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.check;
      if (!c.root_system.empty()) std::cout << " [" << c.root_system << "]";
      std::cout << ": " << c.summary;
      if (o.timings) std::cout << " (" << c.seconds << " s)";
      std::cout << "\n";
    }
    std::cout << "verdict: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? 0 : 1;
}

// Runs f over the systems with up to jobs threads; results keep the input order.
std::vector<CheckOutcome> fan_out(const std::vector<std::string>& systems, unsigned jobs,
                                  const std::function<CheckOutcome(const std::string&)>& f) {
  std::vector<CheckOutcome> out(systems.size());
  std::vector<std::future<void>> running;
  for (std::size_t k = systems.size(); k-- > 0;) {
    if (running.size() >= jobs) {
      running.front().get();
      running.erase(running.begin());
    }
    running.push_back(std::async(std::launch::async, [&, k] { out[k] = f(systems[k]); }));
  }
  for (auto& r : running) r.get();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta blocks, root system Jacobi forms and their Gritsenko and Borcherds lifts"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--json", opt.json, "Same as --format json");
  app.add_option("--cache-dir", opt.cache_dir, "Expansion cache directory (default THETABLOCKS_CACHE_DIR)");
  app.add_flag("--no-cache", opt.no_cache, "Keep expansions in memory only");
  app.add_option("--jobs,-j", opt.jobs, "Parallel root systems (default: hardware threads)");
  app.add_flag("--timings", opt.timings, "Report wall-clock times and cache statistics");
  app.add_option("--limit", opt.limit, "Series terms shown in text output");

  std::string system = "all";
  int q_prec = 3, xi_prec = 3, theta_prec = kDecompositionThetaPrecision;
  std::string norm_bound = "2";
  bool deep = false, even = false;
  std::string forms, vars, xs, which = "theta", n_str, l_str;
  int eta_power = 0;
  std::string prec_str = "3";

  auto* classify = app.add_subcommand("classify", "Root systems whose theta function has q-order one");

  auto* lattice = app.add_subcommand("lattice-report", "Discriminant invariants, genus and Conway data");
  lattice->add_option("--root-system,-r", system, "Root system or all");

  auto* block = app.add_subcommand("block", "Expand a theta block eta^e prod theta(<form, z>)");
  block->add_option("--forms", forms, "Comma separated linear forms, e.g. a,b,a+b")->required();
  block->add_option("--vars", vars, "Comma separated variable names")->required();
  block->add_option("--eta", eta_power, "Power of eta");
  block->add_option("--q-prec", prec_str, "q-precision (exclusive)");

  auto* theta = app.add_subcommand("theta-r", "Expand the root system theta function");
  theta->add_option("--root-system,-r", system, "Root system")->required();
  theta->add_option("--q-prec", prec_str, "q-precision (exclusive)");
  theta->add_flag("--even", even, "Restrict to the even sublattice");

  auto* spec = app.add_subcommand("specialize", "Specialize theta_R at an integral vector");
  spec->add_option("--root-system,-r", system, "Root system")->required();
  spec->add_option("--x", xs, "Comma separated integer vector (default all ones)");
  spec->add_option("--q-prec", prec_str, "q-precision (exclusive)");

  auto* decompose = app.add_subcommand("decompose", "Theta decomposition into vector-valued components");
  decompose->add_option("--root-system,-r", system, "Root system")->required();
  decompose->add_option("--form", which, "theta or psi")->check(CLI::IsMember({"theta", "psi"}));
  decompose->add_option("--theta-prec", theta_prec, "q-precision of theta_R")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Compare G(theta_R) with B(psi_R) within truncation");
  verify->add_option("--root-system,-r", system, "Root system or all");
  verify->add_option("--q-prec", q_prec, "Largest q-exponent compared")->check(CLI::PositiveNumber);
  verify->add_option("--xi-prec", xi_prec, "Largest xi-exponent compared")->check(CLI::PositiveNumber);

  auto* refl = app.add_subcommand("reflectivity", "Divisor multiplicities of psi_R up to a norm bound");
  refl->add_option("--root-system,-r", system, "Root system or all");
  refl->add_option("--norm-bound", norm_bound, "Bound on |2n - (l, l)|");
  refl->add_option("--theta-prec", theta_prec, "q-precision of theta_R")->check(CLI::PositiveNumber);

  auto* pp = app.add_subcommand("principal-parts", "Singular parts of the components of psi_R");
  pp->add_option("--root-system,-r", system, "Root system or all");
  pp->add_option("--theta-prec", theta_prec, "q-precision of theta_R")->check(CLI::PositiveNumber);

  auto* div = app.add_subcommand("divisors", "Multiplicity of one divisor class, or all nonzero classes");
  div->add_option("--root-system,-r", system, "Root system")->required();
  div->add_option("--n", n_str, "q-exponent n");
  div->add_option("--l", l_str, "Comma separated zeta-exponent (pairings with the even sublattice basis)");
  div->add_option("--norm-bound", norm_bound, "Bound on |2n - (l, l)| when listing");
  div->add_option("--theta-prec", theta_prec, "q-precision of theta_R")->check(CLI::PositiveNumber);

  auto* inv = app.add_subcommand("invariants", "Invariants of the Weil representation of D(L_ev)");
  inv->add_option("--root-system,-r", system, "Root system or all");

  auto* suite = app.add_subcommand("suite", "Run every check");
  suite->add_option("--root-system,-r", system, "Root system or all");
  suite->add_option("--q-prec", q_prec, "Largest q-exponent in the main identity")->check(CLI::PositiveNumber);
  suite->add_option("--xi-prec", xi_prec, "Largest xi-exponent in the main identity")->check(CLI::PositiveNumber);
  suite->add_flag("--deep", deep, "Main identity to (4, 4)");

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();
    auto extra = [&](const ExpansionCache* cache) {
      Json e = Json::object();
      if (!opt.timings) return e;
      e["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (cache) e["cache"] = cache_json(cache->stats());
      return e;
    };

    if (*classify) {
      auto c = classification_check();
      if (as_json(opt)) {
        Json rows = Json::array();
        for (const auto& s : system_catalog()) {
          auto datum = root_datum(s.name);
          rows.push_back({{"name", s.name}, {"rank", datum.rank}, {"positive_roots", datum.num_positive()},
                          {"weight", rational_string(ratio(datum.rank, 2))}, {"level", s.level},
                          {"conway_class", s.conway_class}});
        }
        Json j{{"verdict", c.pass ? "pass" : "fail"}, {"systems", rows}, {"found", c.data["systems"]}};
        std::cout << canonical_dump(j) << "\n";
      } else {
        for (const auto& name : c.data["systems"]) {
          const auto& s = system_data(name.get<std::string>());
          auto datum = root_datum(s.name);
          std::cout << s.name << "  rank " << datum.rank << ", " << datum.num_positive() << " positive roots, level "
                    << s.level << ", class " << s.conway_class << "\n";
        }
        std::cout << "verdict: " << (c.pass ? "pass" : "fail") << "\n";
      }
      return c.pass ? 0 : 1;
    }

    if (*lattice) {
      std::vector<CheckOutcome> r;
      for (const auto& s : select_systems(system)) {
        r.push_back(genus_check(s));
        r.push_back(milgram_check(s));
        r.push_back(conway_check(s));
      }
      return emit_outcomes(r, opt, extra(nullptr));
    }

    if (*block) {
      auto names = CLI::detail::split(vars, ',');
      for (auto& v : names) CLI::detail::trim(v);
      auto list = CLI::detail::split(forms, ',');
      auto f = theta_block(block_from_forms(eta_power, list, names), parse_rational(prec_str));
      if (as_json(opt)) {
        std::cout << canonical_dump(form_json(f)) << "\n";
      } else {
        print_form_text("theta block", f, opt.limit);
      }
      return 0;
    }

    if (*theta) {
      auto datum = root_datum(system);
      Rational p = parse_rational(prec_str);
      auto f = even ? theta_R_even(datum, p) : theta_R(datum, p);
      if (as_json(opt)) {
        std::cout << canonical_dump(form_json(f)) << "\n";
      } else {
        print_form_text("theta_" + canonical_name(datum.spec), f, opt.limit);
      }
      return 0;
    }

    if (*spec) {
      const auto& s = system_data(system);
      auto datum = root_datum(s.name);
      std::vector<Rational> xv = xs.empty() ? std::vector<Rational>(datum.rank, Rational(1)) : parse_rational_list(xs);
      if (static_cast<int>(xv.size()) != datum.rank) throw InvalidInput("--x needs " + std::to_string(datum.rank) + " entries");
      IntVector x(datum.rank);
      std::vector<long> values;
      for (int i = 0; i < datum.rank; ++i) {
        if (!is_integral(xv[i])) throw InvalidInput("--x must be integral");
        x(i) = xv[i].get_num();
        values.push_back(static_cast<long>(to_int64(xv[i])));
      }
      Rational p = parse_rational(prec_str);
      auto f = specialize(theta_R(datum, p), x);
      auto direct = theta_block(table_block_at(s, values), p);
      bool equal = f.series == direct.series.normalized();
      if (as_json(opt)) {
        Json j = form_json(f);
        j["equals_table_block"] = equal;
        j["verdict"] = equal ? "pass" : "fail";
        std::cout << canonical_dump(j) << "\n";
      } else {
        print_form_text("specialization", f, opt.limit);
        std::cout << "equals the table block at these parameters: " << (equal ? "yes" : "no") << "\n";
      }
      return equal ? 0 : 1;
    }

    if (*decompose) {
      auto cache = make_cache(opt);
      std::string name = system_data(system).name;
      JacobiForm f = which == "psi" ? cache.psi(name, Rational(theta_prec))
                                    : cache.theta_even(name, Rational(theta_prec));
      auto dec = theta_decompose(f);
      Json comps = Json::array();
      for (long c = 0; c < dec.form.size(); ++c) {
        Json terms = Json::array();
        for (const auto& [e, v] : dec.components[c]) terms.push_back({{"e", rational_string(e)}, {"c", v.get_str()}});
        comps.push_back({{"class", c}, {"element", dec.form.element(c)}, {"q", rational_string(dec.form.q(c))},
                         {"known_below", rational_string(dec.precision[c])}, {"terms", terms}});
      }
      if (as_json(opt)) {
        Json j{{"verdict", dec.consistent() ? "pass" : "fail"}, {"group_orders", dec.form.orders()},
               {"components", comps}, {"violations", dec.violations}, {"terms_checked", dec.terms_checked}};
        for (const auto& [k, v] : extra(&cache).items()) j[k] = v;
        std::cout << canonical_dump(j) << "\n";
      } else {
        std::cout << "D = ";
        for (auto o : dec.form.orders()) std::cout << "Z/" << o << " ";
        std::cout << "(" << dec.form.size() << " classes)\n";
        for (long c = 0; c < dec.form.size(); ++c) {
          if (dec.components[c].empty()) continue;
          std::cout << "  class " << c << " q=" << to_string(dec.form.q(c)) << ":";
          std::size_t shown = 0;
          for (const auto& [e, v] : dec.components[c]) {
            if (shown++ == 6) {
              std::cout << " ...";
              break;
            }
            std::cout << " " << v << " q^" << to_string(e);
          }
          std::cout << "\n";
        }
        for (const auto& v : dec.violations) std::cout << "violation: " << v << "\n";
        std::cout << "verdict: " << (dec.consistent() ? "pass" : "fail") << "\n";
      }
      return dec.consistent() ? 0 : 1;
    }

    if (*verify) {
      auto cache = make_cache(opt);
      auto r = fan_out(select_systems(system), job_count(opt),
                       [&](const std::string& s) { return main_identity_check(cache, s, q_prec, xi_prec); });
      return emit_outcomes(r, opt, extra(&cache));
    }

    if (*refl) {
      auto cache = make_cache(opt);
      Rational bound = parse_rational(norm_bound);
      auto r = fan_out(select_systems(system), job_count(opt),
                       [&](const std::string& s) { return reflectivity_check(cache, s, theta_prec, bound); });
      return emit_outcomes(r, opt, extra(&cache));
    }

    if (*pp) {
      auto cache = make_cache(opt);
      auto r = fan_out(select_systems(system), job_count(opt),
                       [&](const std::string& s) { return principal_parts_check(cache, s, theta_prec); });
      return emit_outcomes(r, opt, extra(&cache));
    }

    if (*div) {
      auto cache = make_cache(opt);
      std::string name = system_data(system).name;
      if (n_str.empty() != l_str.empty()) throw InvalidInput("--n and --l go together");
      if (n_str.empty()) {
        auto c = reflectivity_check(cache, name, theta_prec, parse_rational(norm_bound));
        c.check = "divisors";
        return emit_outcomes({c}, opt, extra(&cache));
      }
      auto psi = cache.psi(name, Rational(theta_prec));
      auto dec = theta_decompose(psi);
      Rational n = parse_rational(n_str);
      auto l = parse_rational_list(l_str);
      Integer m = divisor_multiplicity(dec, psi, n, l);
      if (as_json(opt)) {
        Json j{{"verdict", "pass"}, {"n", rational_string(n)}, {"l", l_str}, {"multiplicity", m.get_str()}};
        std::cout << canonical_dump(j) << "\n";
      } else {
        std::cout << "multiplicity " << m << "\n";
      }
      return 0;
    }

    if (*inv) {
      std::vector<CheckOutcome> r;
      Json spaces = Json::object();
      for (const auto& s : select_systems(system)) {
        auto ev = even_sublattice(gram_underline_R(root_datum(s)));
        auto d = DiscriminantForm::of_lattice(ev.lattice);
        auto space = invariant_subspace(WeilRep(d));
        auto c = invariant_dimension_check(s);
        c.data = invariants_json(d, space);
        r.push_back(c);
        r.push_back(invariant_structure_check(s));
        r.push_back(support_condition_check(s));
      }
      return emit_outcomes(r, opt, extra(nullptr));
    }

    if (*suite) {
      auto cache = make_cache(opt);
      SuiteConfig cfg;
      cfg.systems = select_systems(system);
      cfg.q_max = deep ? 4 : q_prec;
      cfg.xi_max = deep ? 4 : xi_prec;
      cfg.jobs = job_count(opt);
      auto r = run_suite(cache, cfg);
      bool ok = all_pass(r);
      if (as_json(opt)) {
        Json j = suite_json(r, cfg, opt.timings);
        for (const auto& [k, v] : extra(&cache).items()) j[k] = v;
        std::cout << canonical_dump(j) << "\n";
        return ok ? 0 : 1;
      }
      emit_outcomes(r, opt);
      std::cout << "main identity " << (ok ? "verified" : "checked") << " to (" << cfg.q_max << ", " << cfg.xi_max
                << ") within truncation\n";
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
