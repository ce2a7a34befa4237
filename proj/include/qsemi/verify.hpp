#ifndef QSEMI_VERIFY_HPP
#define QSEMI_VERIFY_HPP

#include "qsemi/blockdet.hpp"
#include "qsemi/domzub.hpp"
#include "qsemi/fixtures.hpp"
#include "qsemi/group.hpp"
#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"
#include "qsemi/routes.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsemi {

struct ReportItem {
  std::string name;
  std::string expected;
  std::string actual;
  bool equal = false;
};

struct Report {
  std::string command;
  std::vector<ReportItem> items;
  double seconds = 0;

  bool pass() const
  {
    for (const auto& it : items)
      if (!it.equal) return false;
    return true;
  }

  void add(std::string name, std::string expected, std::string actual)
  {
    const bool eq = expected == actual;
    items.push_back(ReportItem{std::move(name), std::move(expected), std::move(actual), eq});
  }
  void add(std::string name, const Polynomial& expected, const Polynomial& actual)
  {
    items.push_back(ReportItem{std::move(name), expected.str(), actual.str(), expected == actual});
  }
  void check(std::string name, bool ok, std::string expected = "true", std::string actual_if_failed = "false")
  {
    items.push_back(ReportItem{std::move(name), expected, ok ? expected : std::move(actual_if_failed), ok});
  }

  // Failed items show expected and actual; timing is left out unless asked for so that
  // repeated runs print identical bytes.
  std::string text(bool timing = false) const
  {
    std::string s = command + "\n";
    for (const auto& it : items) {
      s += (it.equal ? "  PASS  " : "  FAIL  ") + it.name + "\n";
      if (!it.equal) {
        s += "        expected: " + it.expected + "\n";
        s += "        actual:   " + it.actual + "\n";
      }
    }
    s += "status: " + std::string(pass() ? "pass" : "fail") + "\n";
    if (timing) s += "time: " + std::to_string(seconds) + " s\n";
    return s;
  }

  nlohmann::json json(bool timing = false) const
  {
    nlohmann::json j;
    j["command"] = command;
    j["status"] = pass() ? "pass" : "fail";
    j["items"] = nlohmann::json::array();
    for (const auto& it : items)
      j["items"].push_back({{"name", it.name}, {"expected", it.expected}, {"actual", it.actual}, {"equal", it.equal}});
    if (timing) j["timing"] = {{"seconds", seconds}};
    return j;
  }
};

struct VerifyOptions {
  int k = 3;
  int trials = 20;
  std::uint64_t seed = default_seed;
};

class UnknownSuite : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace suites {

inline void lemma1(Report& rep, const VerifyOptions&)
{
  const Matrix x = generic_matrix("X", 2, 2), y = generic_matrix("Y", 2, 2), z = generic_matrix("Z", 2, 2);
  const Matrix xh = adjugate(x), yh = adjugate(y), zh = adjugate(z);
  const Polynomial dx = determinant(x);
  auto tr = [](const Matrix& m) { return trace(m); };

  rep.add("(a) tr(X adj Y) = tr X tr Y - tr(XY)", tr(x) * tr(y) - tr(x * y), tr(x * yh));
  rep.add("(a) tr(adj X Y) = tr X tr Y - tr(XY)", tr(x) * tr(y) - tr(x * y), tr(xh * y));
  rep.add("(b) tr adj X = tr X", tr(x), tr(xh));
  rep.add("(b) adj(XY) = adj Y adj X", (yh * xh).str(), adjugate(x * y).str());
  rep.add("(c) tr(X^2 Y) = tr X tr(XY) - |X| tr Y", tr(x) * tr(x * y) - dx * tr(y), tr(x * x * y));
  rep.add("(d) tr(XYXZ) = tr(XY) tr(XZ) - |X| tr(Y adj Z)", tr(x * y) * tr(x * z) - dx * tr(y * zh),
          tr(x * y * x * z));
  const Matrix ch = x * x - tr(x) * x + dx * Matrix::identity(2);
  rep.add("(e) X^2 - (tr X) X + |X| I = 0", Matrix::zero(2, 2).str(), ch.str());
  rep.add("adj(adj X) = X", x.str(), adjugate(xh).str());
  rep.add("X adj X = |X| I", (dx * Matrix::identity(2)).str(), (x * xh).str());
  rep.add("adj X adj X = |X| I", (dx * Matrix::identity(2)).str(), (xh * x).str());
}

inline BlockMatrix generic_blocks(std::size_t k)
{
  BlockMatrix z(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s)
      z.set_block(r, s, generic_matrix("z" + std::to_string(r + 1) + std::to_string(s + 1), 2, 2));
  return z;
}

inline BlockMatrix random_blocks(std::size_t k, Rng& rng)
{
  BlockMatrix z(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s) z.set_block(r, s, random_matrix(2, 2, rng));
  return z;
}

inline bool integer_coefficients(const Polynomial& p)
{
  for (const auto& [m, c] : p.terms())
    if (c.get_den() != 1) return false;
  return true;
}

inline BlockRoute block_route(std::initializer_list<BlockFactor> fs) { return BlockRoute{fs}; }

inline void prop1(Report& rep, const VerifyOptions& opt)
{
  if (opt.k < 1 || opt.k > default_route_set_bound)
    throw std::out_of_range("prop1: --k must be between 1 and " + std::to_string(default_route_set_bound));

  // sample permutation sigma = (1->3, 2->4, 3->1, 4->5, 5->2, 6->6)
  BlockRouteSet expected{canonicalize(block_route({{0, 1, true}, {0, 1, false}})),
                         canonicalize(block_route({{1, 0, true}, {1, 2, false}, {2, 2, true}, {2, 0, false}}))};
  std::sort(expected.begin(), expected.end());
  rep.add("route set of sigma = (3,4,1,5,2,6)", route_set_str(expected),
          route_set_str(associated_route_set({2, 3, 0, 4, 1, 5})));
  if (opt.k >= 2) rep.add("k = 2 class count", "3", std::to_string(enumerate_route_set_classes(2).size()));

  for (int k = 1; k <= opt.k; ++k) {
    const std::string ks = "k = " + std::to_string(k);
    if (k <= 3) {
      Permutation sigma(static_cast<std::size_t>(2 * k));
      std::iota(sigma.begin(), sigma.end(), 0);
      std::size_t bad = 0, total = 0;
      do {
        ++total;
        if (!is_valid_route_set(associated_route_set(sigma), k)) ++bad;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      rep.add(ks + ": every route set is a row/column partition", "0 invalid of " + std::to_string(total),
              std::to_string(bad) + " invalid of " + std::to_string(total));
    }

    const auto classes = enumerate_route_set_classes(k);
    if (k <= 2) {
      const BlockMatrix z = generic_blocks(static_cast<std::size_t>(k));
      const Polynomial lhs = det_via_routes(z, classes);
      rep.add(ks + ": route expansion = determinant (generic blocks)", determinant(assemble(z)), lhs);
      rep.check(ks + ": route expansion has integer coefficients", integer_coefficients(lhs));
    }
    else {
      int agree = 0;
      for (int t = 0; t < opt.trials; ++t) {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(1000 * k + t)));
        const BlockMatrix z = random_blocks(static_cast<std::size_t>(k), rng);
        if (det_via_routes(z, classes) == determinant(assemble(z))) ++agree;
      }
      rep.add(ks + ": route expansion = determinant (random rational blocks)",
              std::to_string(opt.trials) + " of " + std::to_string(opt.trials),
              std::to_string(agree) + " of " + std::to_string(opt.trials));
    }
  }
}

inline void invariance_for(Report& rep, const std::string& label, const Quiver& q, const VerifyOptions& opt,
                           bool symbolic)
{
  const DimensionVector dims = uniform_dims(q, 2);
  const Representation generic = generic_representation(q, dims);
  Rng rng(derive_seed(opt.seed, 77));
  const Representation sample = random_representation(q, dims, rng);
  const Representation& at = symbolic ? generic : sample;
  std::size_t sl_ok = 0, gl_ok = 0;
  const auto routes = enumerate_simple_routes(q);
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const Route& r = routes[i].canonical;
    const Polynomial f = route_trace(r, generic);
    const auto w = route_weight(r, q);
    const std::uint64_t s = derive_seed(opt.seed, i);
    if (check_semiinvariance(f, w, at, opt.trials, s, GroupKind::SpecialLinear).pass()) ++sl_ok;
    if (check_semiinvariance(f, w, at, opt.trials, s ^ 1, GroupKind::GeneralLinear).pass()) ++gl_ok;
  }
  const std::string n = std::to_string(routes.size());
  const std::string where = symbolic ? " (generic representation)" : " (seeded sample)";
  rep.add(label + ": SL-invariant traces" + where, n + " of " + n, std::to_string(sl_ok) + " of " + n);
  rep.add(label + ": GL weight = route weight" + where, n + " of " + n, std::to_string(gl_ok) + " of " + n);
}

inline void invariance(Report& rep, const VerifyOptions& opt)
{
  invariance_for(rep, "kronecker", fixtures::kronecker(), opt, true);
  invariance_for(rep, "kronecker", fixtures::kronecker(), opt, false);
  invariance_for(rep, "three-vertex", fixtures::three_vertex(), opt, false);

  // a wrong weight must be caught
  const Quiver q = fixtures::kronecker();
  const Route r = parse_route(q, "(a,~b)");
  Rng rng(derive_seed(opt.seed, 78));
  const Representation sample = random_representation(q, uniform_dims(q, 2), rng);
  auto w = route_weight(r, q);
  w["2"] += 1;
  const bool caught = !check_semiinvariance(route_trace(r, generic_representation(q, uniform_dims(q, 2))), w, sample,
                                            opt.trials, opt.seed, GroupKind::GeneralLinear)
                           .pass();
  rep.check("kronecker: shifted weight on (a,~b) is rejected", caught);
}

inline void reduction_for(Report& rep, const std::string& label, const Quiver& q, std::size_t max_length)
{
  const Representation generic = generic_representation(q, uniform_dims(q, 2));
  std::size_t repeated = 0, repeated_ok = 0, paired = 0, paired_ok = 0;
  for (const auto& rc : enumerate_route_classes(q, max_length)) {
    const Route& r = rc.canonical;
    const Polynomial t = route_trace(r, generic);
    if (!is_simple(r)) {
      ++repeated;
      const TraceExpr e = reduce_repeated(r, q);
      bool simple = true;
      for (const auto& s : e.symbols) simple = simple && is_simple(s.canonical);
      if (simple && e.evaluate(generic) == t) ++repeated_ok;
    }
    std::optional<TraceExpr> e;
    try {
      e = eliminate_adjoint_pair(r, q);
    }
    catch (const RouteError&) {
    }
    if (e) {
      ++paired;
      if (e->evaluate(generic) == t) ++paired_ok;
    }
  }
  auto of = [](std::size_t a, std::size_t b) { return std::to_string(a) + " of " + std::to_string(b); };
  const std::string len = " (length <= " + std::to_string(max_length) + ")";
  rep.add(label + ": reduce_repeated agrees with the trace" + len, of(repeated, repeated), of(repeated_ok, repeated));
  rep.add(label + ": eliminate_adjoint_pair agrees with the trace" + len, of(paired, paired), of(paired_ok, paired));
}

inline void reduction(Report& rep, const VerifyOptions&)
{
  reduction_for(rep, "kronecker", fixtures::kronecker(), 6);
  reduction_for(rep, "one-loop", fixtures::one_loop(), 6);
  reduction_for(rep, "two-cycle", fixtures::two_cycle(), 6);
  reduction_for(rep, "three-vertex", fixtures::three_vertex(), 6);
  reduction_for(rep, "four-vertex", fixtures::four_vertex(), 6);
}

inline void dz_for(Report& rep, const std::string& label, const DZSpec& spec)
{
  const Quiver q = fixtures::kronecker();
  const Representation generic = generic_representation(q, uniform_dims(q, 2));
  const auto gens = generator_routes(q);
  for (const auto& si : extract_semiinvariants(spec, generic)) {
    const std::string mu = si.multidegree.str();
    rep.add(label + ": " + mu + " coefficient = route-set product", si.value,
            route_product_coefficient(spec, generic, si.multidegree));
    const auto expr = membership_in_trace_algebra(si.value, gens, generic);
    rep.add(label + ": " + mu + " coefficient in the generator algebra", si.value,
            expr ? expr->evaluate(generic) : Polynomial());
  }
}

inline void dz(Report& rep, const VerifyOptions&)
{
  rep.add("kronecker generators", "(a,~a) (a,~b) (b,~b)", [] {
    const Quiver q = fixtures::kronecker();
    std::string s;
    for (const auto& g : generator_routes(q)) s += (s.empty() ? "" : " ") + route_str(q, g.canonical);
    return s;
  }());
  dz_for(rep, "kronecker", fixtures::kronecker_dz());
  dz_for(rep, "kronecker crossed", fixtures::kronecker_dz_crossed());
}

inline void counterexample(Report& rep, const VerifyOptions& opt)
{
  const CounterexampleReport c = counterexample_check(opt.seed);
  rep.check("F is nonzero at the seeded sample", c.f_nonzero(), "nonzero", c.f_value.get_str());
  for (const auto& [a, d] : c.arrow_degree)
    rep.add("F has degree 1 in arrow " + a, "1..1",
            std::to_string(c.arrow_low_degree.at(a)) + ".." + std::to_string(d));
  rep.check("F fails GL-invariance under g_1 = diag(2,1,1)", c.gl_invariance_fails(), "changed",
            "unchanged: " + c.value_after.get_str());
  rep.check("reversed arrows enter simple route traces with degree >= 2", c.reverse_degree_ok(), ">= 2",
            std::to_string(c.min_reverse_degree) + " on " + c.min_reverse_route);
  rep.add("trace products matching the degrees of F", "0", std::to_string(c.basis_size));
  rep.check("membership: not found", c.not_found, "NotFound", "found or inconclusive");
}

struct Suite {
  const char* name;
  void (*run)(Report&, const VerifyOptions&);
};

inline const std::vector<Suite>& all()
{
  static const std::vector<Suite> s{{"lemma1", lemma1},         {"prop1", prop1}, {"invariance", invariance},
                                    {"reduction", reduction},   {"dz", dz},       {"counterexample", counterexample}};
  return s;
}

} // namespace suites

inline bool is_suite(const std::string& name)
{
  if (name == "all") return true;
  for (const auto& s : suites::all())
    if (name == s.name) return true;
  return false;
}

// Runs one suite, or every suite for "all" (item names prefixed by the suite).
inline Report run_suite(const std::string& name, const VerifyOptions& opt = {})
{
  if (!is_suite(name)) throw UnknownSuite("unknown suite \"" + name + "\"");
  Report rep;
  rep.command = "verify " + name + " --k " + std::to_string(opt.k) + " --trials " + std::to_string(opt.trials) +
                " --seed " + std::to_string(opt.seed);
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& s : suites::all()) {
    if (name != "all" && name != s.name) continue;
    Report part;
    s.run(part, opt);
    for (auto& it : part.items) {
      if (name == "all") it.name = std::string(s.name) + ": " + it.name;
      rep.items.push_back(std::move(it));
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

} // namespace qsemi

#endif
